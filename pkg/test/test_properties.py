# -*- encoding: utf-8 -*-

from fractions import Fraction
from random import Random

from rotelem import (
    IDENTITY,
    ResourceCapExceeded,
    Word,
    analysis_map,
    bfs_spanning_tree,
    classify_edge,
    conjugacy_equal,
    detect_in_contraction,
    enumerate_periodic,
    fixture_path,
    generate_s_set,
    normalize_rot,
    parse_spec,
    rotation_word,
    validate_map,
    vertex_rotation,
    with_changed_lift,
    word_power,
)
from rotelem.graphs import CoherentLabeling
from rotelem.samples import random_graph, random_vertex_map, with_new_edge

W = Word.parse
MAX_BRANCHES = 20_000


def load(name):
    return parse_spec(fixture_path(name)).lifted()


def random_word(rng, names, max_length):
    return Word(
        [(rng.choice(names), rng.choice((1, -1))) for _ in range(rng.randint(0, max_length))]
    )


def exponent(element):
    return Fraction(0) if element.is_identity else element.exponent


def test_lift_change_law():
    rng = Random(7)
    for name in ("house.spec", "three_vertex.spec"):
        lm = load(name)
        names = sorted(lm.labeling.generators)
        for _ in range(100):
            gamma = random_word(rng, names, 4)
            changed = with_changed_lift(lm, gamma)
            for vertex in lm.graph.vertices:
                w, n = rotation_word(lm, vertex)
                expected = normalize_rot(word_power(gamma, n) * w, n)
                assert vertex_rotation(changed, vertex) == expected


def detections_are_realized(lm, max_period):
    checked = 0
    for edge in lm.graph.edges:
        analysis = analysis_map(lm, edge.id)
        _, m = rotation_word(analysis, edge.initial)
        _, n = rotation_word(analysis, edge.terminal)
        k = 1
        while k * m * n <= max_period:
            try:
                records = enumerate_periodic(analysis, edge.id, k * m * n, MAX_BRANCHES)
            except ResourceCapExceeded:
                break

            for detection in detect_in_contraction(analysis, edge.id, k):
                assert any(conjugacy_equal(r.element, detection.element) for r in records)
                checked += 1
            k += 1

    return checked


def test_detections_on_fixtures():
    # Every vertex of the house has period 5, so k·m·n starts at 25
    for name, max_period in (("house.spec", 25), ("three_vertex.spec", 8), ("circle.spec", 8)):
        assert detections_are_realized(load(name), max_period) > 0


def test_detections_on_random_maps():
    rng = Random(2024)
    checked = 0
    for _ in range(50):
        graph = random_graph(rng, max_vertices=6, max_edges=8)
        labeling = CoherentLabeling(graph, bfs_spanning_tree(graph, graph.vertices[0]))
        lm = validate_map(graph, labeling, random_vertex_map(rng, graph))
        checked += detections_are_realized(lm, 8)

    assert checked > 0


def constructed_edges(seed, both, attempts=400):
    rng = Random(seed)
    for _ in range(attempts):
        graph = random_graph(rng, max_vertices=5, max_edges=6)
        vmap = random_vertex_map(rng, graph)
        new_graph, new_map, edge_id = with_new_edge(rng, graph, vmap, both=both)
        labeling = CoherentLabeling(new_graph, bfs_spanning_tree(new_graph, new_graph.vertices[0]))
        yield validate_map(new_graph, labeling, new_map), edge_id


def test_fixed_point_when_neither_begins():
    found = 0
    for lm, edge_id in constructed_edges(44, both=False):
        c = classify_edge(lm, edge_id)
        if c.begins1 or c.begins2:
            continue

        records = enumerate_periodic(lm, edge_id, 1)
        assert any(r.element == IDENTITY for r in records)
        found += 1
        if found == 20:
            break

    assert found > 0


def test_fixed_point_when_both_begin():
    found = 0
    for lm, edge_id in constructed_edges(45, both=True):
        c = classify_edge(lm, edge_id)
        if not (c.begins1 and c.begins2):
            continue

        records = enumerate_periodic(lm, edge_id, 1)
        assert any(r.element == IDENTITY for r in records)
        found += 1
        if found == 20:
            break

    assert found > 0


def test_circle_mediants():
    lm = load("circle.spec")
    a = W("a")
    assert vertex_rotation(lm, "V1") == IDENTITY
    assert vertex_rotation(lm, "V2") == normalize_rot(a, 1)

    from_oracle = set()
    for n in range(1, 7):
        for record in enumerate_periodic(lm, "E1", n):
            from_oracle.add(exponent(record.element))

    s_set = generate_s_set((Word(), 1), (a, 1), 6)
    from_s_set = {exponent(e) for e in s_set}

    expected = {Fraction(s, r + s) for r in range(7) for s in range(7) if 0 < r + s <= 6}
    assert from_s_set == expected
    assert from_oracle == expected
