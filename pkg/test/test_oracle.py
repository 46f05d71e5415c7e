# -*- encoding: utf-8 -*-

from fractions import Fraction

import pytest

from rotelem import (
    IDENTITY,
    CaseTag,
    EdgePath,
    HypothesisUnmet,
    PointKind,
    ResourceCapExceeded,
    VertexMap,
    Word,
    branch_decomposition,
    candidate_periods,
    classify_edge,
    conjugacy_equal,
    deduplicate_records,
    enumerate_periodic,
    fixture_path,
    iterate_edge_lift,
    normalize_rot,
    one_orbit_analysis,
    parse_spec,
    predicted_elements,
    s_closure_check,
    validate_map,
    vertex_rotation,
    verify_predictions,
)

W = Word.parse


def load(name):
    return parse_spec(fixture_path(name)).lifted()


def test_branch_decomposition():
    lm = load("house.spec")
    branches = branch_decomposition(lm, "E3", 1)
    assert [str(b.target) for b in branches] == ["~E1", "E3", "E4"]
    assert all(b.width == Fraction(1, 3) for b in branches)
    assert branches[1].left == Fraction(1, 3)

    branches = branch_decomposition(lm, "E1", 1)
    assert len(branches) == 1
    assert (branches[0].left, branches[0].right) == (0, 1)

    lm = load("three_vertex.spec")
    branches = branch_decomposition(lm, "E3", 3)
    assert [str(b.target) for b in branches] == ["aaE1", "a~E3", "a~E2"]
    assert all(b.width == Fraction(1, 3) for b in branches)
    assert branches[2].itinerary == (0, 0, 2)

    with pytest.raises(ValueError):
        branch_decomposition(lm, "E3", 0)

    with pytest.raises(ResourceCapExceeded):
        branch_decomposition(load("circle.spec"), "E1", 8, max_path_length=10)


def test_branches_follow_iteration():
    for name in ("house.spec", "three_vertex.spec", "circle.spec"):
        lm = load(name)
        for edge in lm.graph.edges:
            for n in range(1, 7):
                branches = branch_decomposition(lm, edge.id, n)
                path = iterate_edge_lift(lm, edge.id, n)
                assert tuple(b.target for b in branches) == path.steps
                assert branches[0].left == 0 and branches[-1].right == 1
                for first, second in zip(branches[:-1], branches[1:]):
                    assert first.right == second.left


def test_house_fixed_point():
    lm = load("house.spec")
    for n in range(1, 11):
        records = enumerate_periodic(lm, "E3", n)
        assert len(records) == 1
        record = records[0]
        assert record.kind == PointKind.INTERIOR
        assert record.location == Fraction(1, 2)
        assert record.element == IDENTITY
        assert record.period == n


def test_three_vertex_records():
    lm = load("three_vertex.spec")
    records = enumerate_periodic(lm, "E3", 3)
    assert len(records) == 1
    record = records[0]
    assert record.kind == PointKind.INTERIOR
    assert record.location == Fraction(1, 2)
    assert record.rotation_word == W("a")
    assert record.element == normalize_rot(W("a"), 3)
    assert record.to_dict()["location"] == "1/2"


def test_circle_records():
    lm = load("circle.spec")
    records = enumerate_periodic(lm, "E1", 1)
    assert [(r.kind, r.vertex) for r in records] == [
        (PointKind.VERTEX, "V1"),
        (PointKind.VERTEX, "V2"),
    ]
    assert records[0].element == IDENTITY
    assert records[1].element == normalize_rot(W("a"), 1)

    records = enumerate_periodic(lm, "E1", 2)
    interior = [r for r in records if r.kind == PointKind.INTERIOR]
    assert [r.location for r in interior] == [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)]
    assert all(r.element == normalize_rot(W("a"), 2) for r in interior)

    # Endpoint records agree with the rotation elements of the vertices
    for n in range(1, 5):
        for record in enumerate_periodic(lm, "E1", n):
            if record.kind == PointKind.VERTEX:
                assert conjugacy_equal(record.element, vertex_rotation(lm, record.vertex))


def test_degenerate_record():
    spec = parse_spec(fixture_path("three_vertex.spec"))
    tracks = {v: EdgePath(v) for v in spec.graph.vertices}
    lm = validate_map(spec.graph, spec.labeling, VertexMap("id", tracks))
    records = enumerate_periodic(lm, "E2", 1)
    assert len(records) == 1
    assert records[0].kind == PointKind.DEGENERATE
    assert records[0].location == (Fraction(0), Fraction(1))
    assert records[0].element == IDENTITY
    assert records[0].location_str() == "[0, 1]"


def test_period_doubling():
    lm = load("circle.spec")
    for n in range(1, 4):
        doubled = enumerate_periodic(lm, "E1", 2 * n)
        for record in enumerate_periodic(lm, "E1", n):
            matches = [r for r in doubled if r.location == record.location]
            assert len(matches) == 1
            assert matches[0].element == record.element


def test_deduplicate_records():
    lm = load("circle.spec")
    records = enumerate_periodic(lm, "E1", 1) + enumerate_periodic(lm, "E2", 1)
    unique = deduplicate_records(records)
    vertices = [r.vertex for r in unique if r.kind == PointKind.VERTEX]
    assert sorted(vertices) == ["V1", "V2"]
    assert deduplicate_records(unique) == unique


def test_candidate_periods():
    assert candidate_periods(6, 8) == [1, 2, 3, 6]
    assert candidate_periods(2, 8) == [1, 2, 4, 6, 8]
    assert candidate_periods(8, 3) == [1, 2]


def test_verify_predictions():
    lm = load("three_vertex.spec")
    predictions = predicted_elements(classify_edge(lm, "E3"), 4)
    report = verify_predictions(lm, "E3", predictions, 8)
    assert report.all_matched
    assert all(outcome.status == "matched" for outcome in report.outcomes)

    by_element = {str(o.prediction.element): o for o in report.outcomes}
    third = by_element["a^1/3"].record
    assert third.period == 3
    assert third.location == Fraction(1, 2)
    assert by_element["a^1/4"].record.period == 4

    report = verify_predictions(lm, "E3", predictions, 3)
    statuses = {str(o.prediction.element): o.status for o in report.outcomes}
    assert statuses == {"a^1/3": "matched", "a^1/4": "beyond-bound"}
    assert not report.all_matched
    assert report.summary() == "1 matched, 0 unmatched, 1 beyond the period bound"
    assert report.to_dict()["beyond_bound"] == 1

    assert verify_predictions(lm, "E3", [], 8).outcomes == []

    unwitnessed = predicted_elements(classify_edge(lm, "E3"), 4, max_scale=0)
    assert verify_predictions(lm, "E3", unwitnessed, 8).all_matched


def test_verify_fixed_point():
    lm = load("house.spec")
    predictions = predicted_elements(classify_edge(lm, "E3"), 4)
    report = verify_predictions(lm, "E3", predictions, 4)
    assert report.all_matched
    record = report.outcomes[0].record
    assert record.period == 1
    assert record.location == Fraction(1, 2)


def test_s_closure_common_root():
    lm = load("three_vertex.spec")
    report = s_closure_check(lm, "E3", 6, 2)
    elements = {str(r.element) for r in report.representatives}
    assert {"a^1/3", "a^1/4"} <= elements
    assert report.all_confirmed
    assert any(str(o.element) == "a^1/4" and o.period == 4 for o in report.outcomes)
    assert all(o.record.kind != PointKind.VERTEX for o in report.outcomes)

    with pytest.raises(HypothesisUnmet):
        s_closure_check(lm, "E3", 6, 2, vertex_mode="initial")

    with pytest.raises(ValueError):
        s_closure_check(lm, "E3", 6, 2, vertex_mode="sideways")


def test_s_closure_circle():
    lm = load("circle.spec")
    for mode in ("initial", "terminal"):
        report = s_closure_check(lm, "E1", 4, 2, vertex_mode=mode)
        assert report.all_confirmed
        assert report.vertex_pair == ((Word(), 1) if mode == "initial" else (W("a"), 1))


def test_one_orbit_house():
    report = one_orbit_analysis(load("house.spec"))
    assert report.edge == "E3"
    assert report.witness.location == Fraction(1, 2)
    assert (report.w1, report.w2) == (W("ab"), W("ba"))
    assert report.distinct_words
    assert not report.belonging["E3"]
    assert report.belonging["E2"]
    assert not report.all_edges_belong
    assert report.classification is None
    assert report.verification is None
    assert report.to_dict()["all_edges_belong"] is False


def test_one_orbit_preconditions():
    spec = parse_spec(fixture_path("circle.spec"))
    tracks = {"V1": EdgePath.parse("E1", "V1"), "V2": EdgePath.parse("E2", "V2")}
    rotate = validate_map(spec.graph, spec.labeling, VertexMap("rotate", tracks))
    with pytest.raises(HypothesisUnmet, match="rank"):
        one_orbit_analysis(rotate)

    with pytest.raises(HypothesisUnmet, match="single periodic orbit"):
        one_orbit_analysis(load("three_vertex.spec"))


def test_one_orbit_all_edges_belong():
    report = one_orbit_analysis(load("theta.spec"), max_denominator=3, period_bound=8)
    assert report.edge == "E1"
    assert report.witness.location == Fraction(1, 4)
    assert report.witness.element == IDENTITY
    assert (report.w1, report.w2) == (W("a~b~b"), W("~b~ba"))
    assert report.distinct_words
    assert report.all_edges_belong

    c = report.classification
    assert c.case == CaseTag.BELONGS_BOTH_NEITHER_BEGIN
    assert (c.gammas1, c.gammas2) == (frozenset([W("a~b")]), frozenset([W("~b")]))

    first = report.predictions[0]
    assert (first.element, first.period_witness) == (IDENTITY, 1)
    others = report.predictions[1:]
    assert {p.side for p in others} == {1, 2}
    assert all(p.exponent == Fraction(1, 3) and p.q % 12 == 0 for p in others)

    outcomes = report.verification.outcomes
    assert outcomes[0].status == "matched"
    assert outcomes[0].record.period == 1
    assert outcomes[0].record.location == Fraction(1, 4)
    assert all(o.status != "unmatched" for o in outcomes)
