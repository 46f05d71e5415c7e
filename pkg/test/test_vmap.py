# -*- encoding: utf-8 -*-

from random import Random

import numpy as np
import pytest

from rotelem import (
    EdgePath,
    HypothesisUnmet,
    IterationMode,
    LiftedVertex,
    MapError,
    ResourceCapExceeded,
    RotationElement,
    VertexMap,
    Word,
    analysis_map,
    apply_lift_vertex,
    bfs_spanning_tree,
    branch_count,
    conjugacy_equal,
    contract,
    deck,
    edge_image,
    fixture_path,
    invert,
    iterate_edge_lift,
    normalize_rot,
    orbit,
    parse_spec,
    relabel,
    rotation_word,
    rotation_word_from,
    transition_matrix,
    validate_map,
    vertex_rotation,
    with_changed_lift,
    word_power,
)
from rotelem.detector import contraction_witness
from rotelem.graphs import CoherentLabeling
from rotelem.samples import random_graph, random_vertex_map

W = Word.parse


def load(name):
    return parse_spec(fixture_path(name)).lifted()


def test_house_lift():
    lm = load("house.spec")
    assert lm.t == {"V1": W("a"), "V2": Word(), "V3": Word(), "V4": W("b"), "V5": Word()}
    assert lm.sigma == {"V1": "V2", "V2": "V3", "V3": "V4", "V4": "V5", "V5": "V1"}
    assert lm.is_equivariant


def test_three_vertex_lift():
    lm = load("three_vertex.spec")
    assert lm.t == {"V1": Word(), "V2": Word(), "V3": W("a")}


def test_identity_map():
    spec = parse_spec(fixture_path("house.spec"))
    tracks = {v: EdgePath(v) for v in spec.graph.vertices}
    lm = validate_map(spec.graph, spec.labeling, VertexMap("id", tracks))
    assert all(t.is_identity for t in lm.t.values())

    x = LiftedVertex(W("ab"), "V3")
    assert apply_lift_vertex(lm, x) == x


def test_validate_map_errors():
    spec = parse_spec(fixture_path("house.spec"))
    graph, labeling = spec.graph, spec.labeling
    tracks = dict(spec.vertex_map.tracks)

    missing = dict(tracks)
    del missing["V3"]
    with pytest.raises(MapError, match="missing track for vertex V3"):
        validate_map(graph, labeling, VertexMap("m", missing))

    collapsing = dict(tracks, V2=EdgePath("V2"), V1=EdgePath.parse("E2", "V1"))
    with pytest.raises(MapError, match="not a permutation"):
        validate_map(graph, labeling, VertexMap("m", collapsing))

    shifted = dict(tracks, V1=EdgePath.parse("E4", "V2"))
    with pytest.raises(MapError, match="starts at V2"):
        validate_map(graph, labeling, VertexMap("m", shifted))

    good_image = {"E3": EdgePath.parse("~E1 E3 ~E3 E3 E4", "V1")}
    validate_map(graph, labeling, VertexMap("m", tracks, good_image))

    bad_image = {"E3": EdgePath.parse("E2 E4", "V1")}
    with pytest.raises(MapError, match="not homotopic"):
        validate_map(graph, labeling, VertexMap("m", tracks, bad_image))


def test_edge_image():
    lm = load("house.spec")
    assert str(edge_image(lm, "E3")) == "~E1 E3 E4"

    lm = load("three_vertex.spec")
    assert str(edge_image(lm, "E1")) == "~E2"
    assert str(edge_image(lm, "E3")) == "E1"
    assert str(edge_image(lm, "E2")) == "E2 E3 ~E1"


def test_apply_lift_vertex():
    lm = load("house.spec")
    assert apply_lift_vertex(lm, LiftedVertex(W("b"), "V1")) == LiftedVertex(W("ba"), "V2")
    assert apply_lift_vertex(lm, LiftedVertex(Word(), "V2")) == LiftedVertex(Word(), "V3")


def test_vertex_rotation():
    lm = load("house.spec")
    assert vertex_rotation(lm, "V2") == normalize_rot(W("ba"), 5)
    assert vertex_rotation(lm, "V5") == normalize_rot(W("ab"), 5)
    assert rotation_word(lm, "V2") == (W("ba"), 5)
    assert conjugacy_equal(vertex_rotation(lm, "V2"), vertex_rotation(lm, "V5"))

    lm = load("three_vertex.spec")
    assert vertex_rotation(lm, "V1") == normalize_rot(W("a"), 2)
    assert vertex_rotation(lm, "V3") == normalize_rot(W("a"), 2)
    assert vertex_rotation(lm, "V2").is_identity
    assert orbit(lm, "V1") == ["V1", "V3"]
    assert orbit(lm, "V2") == ["V2"]


def test_with_changed_lift():
    lm = load("house.spec")
    same = with_changed_lift(lm, Word())
    assert same.is_equivariant
    assert vertex_rotation(same, "V2") == vertex_rotation(lm, "V2")

    changed = with_changed_lift(lm, W("a"))
    assert not changed.is_equivariant
    assert rotation_word(changed, "V2") == (W("aaaaaba"), 5)

    lm = load("three_vertex.spec")
    assert vertex_rotation(with_changed_lift(lm, W("a")), "V2") == normalize_rot(W("a"), 1)

    # On a circle the lift a^k adds k to the exponent
    circle = load("circle.spec")
    assert vertex_rotation(circle, "V2") == normalize_rot(W("a"), 1)
    for k in range(1, 4):
        shifted = with_changed_lift(circle, word_power(W("a"), k))
        assert vertex_rotation(shifted, "V2") == RotationElement.power(W("a"), k + 1)
        assert vertex_rotation(shifted, "V1") == normalize_rot(word_power(W("a"), k), 1)


def test_relabel():
    lm = load("three_vertex.spec")
    moved = analysis_map(lm, "E3")
    assert moved.labeling.tree.edges == frozenset(["E1", "E3"])
    assert moved.labeling.theta["E2"] == W("a")
    assert moved.t == {"V1": W("a"), "V2": Word(), "V3": Word()}
    assert conjugacy_equal(vertex_rotation(moved, "V1"), normalize_rot(W("a"), 2))

    # Edges already in the tree keep the labeling
    assert analysis_map(lm, "E1") is lm

    with pytest.raises(HypothesisUnmet):
        relabel(with_changed_lift(lm, W("a")), moved.labeling.tree)


def test_iterate_edge_lift():
    lm = load("three_vertex.spec")
    path = iterate_edge_lift(lm, "E3", 3, IterationMode.BRANCHWISE)
    assert str(path) == "aaE1 a~E3 a~E2"
    assert path.start == LiftedVertex(W("aa"), "V1")
    assert path.end == LiftedVertex(W("a"), "V2")

    path = iterate_edge_lift(lm, "E3", 0)
    assert str(path) == "E3"
    assert path.end == LiftedVertex(W("a"), "V2")

    lm = load("house.spec")
    path = iterate_edge_lift(lm, "E3", 1)
    assert str(path) == "~E1 E3 E4"
    assert path.start == LiftedVertex(Word(), "V1")
    assert path.end == LiftedVertex(Word(), "V3")

    with pytest.raises(ResourceCapExceeded):
        iterate_edge_lift(lm, "E3", 10, max_path_length=4)

    with pytest.raises(ValueError):
        iterate_edge_lift(lm, "E3", -1)


@pytest.mark.parametrize(
    "name,edge_id,k",
    [
        (name, edge_id, k)
        for name, edges in (
            ("three_vertex.spec", ["E1", "E2"]),
            ("house.spec", ["E1", "E3", "E4", "E5"]),
        )
        for edge_id in edges
        for k in (1, 2)
    ],
)
def test_contracted_iteration_matches_witness(name, edge_id, k):
    lm = load(name)
    edge = lm.graph.edge(edge_id)
    _, m = rotation_word(lm, edge.initial)
    _, n = rotation_word(lm, edge.terminal)
    iterated = iterate_edge_lift(lm, edge_id, k * m * n, IterationMode.CONTRACTED)
    branchwise = contract(iterate_edge_lift(lm, edge_id, k * m * n))
    witness = contraction_witness(lm, edge_id, k)
    assert iterated == branchwise
    assert iterated.steps == witness.steps
    assert iterated.start == witness.start
    assert iterated.end == witness.end


def test_transition_matrix():
    lm = load("house.spec")
    matrix = transition_matrix(lm)
    assert matrix.shape == (6, 6)
    assert list(matrix[2]) == [1, 0, 1, 1, 0, 0]
    assert matrix.sum() == 8
    assert matrix.dtype == np.int64

    assert branch_count(lm, "E3", 0) == 1
    assert branch_count(lm, "E3", 1) == 3
    assert branch_count(lm, "E3", 2) == 5
    for n in range(5):
        assert branch_count(lm, "E3", n) == len(iterate_edge_lift(lm, "E3", n))


def random_maps(seed, count):
    rng = Random(seed)
    for _ in range(count):
        graph = random_graph(rng)
        labeling = CoherentLabeling(graph, bfs_spanning_tree(graph, graph.vertices[0]))
        vmap = random_vertex_map(rng, graph)
        yield rng, validate_map(graph, labeling, vmap)


def test_map_properties():
    for rng, lm in random_maps(4242, 200):
        graph = lm.graph
        names = sorted(lm.labeling.generators)

        for vertex in graph.vertices:
            elements = [vertex_rotation(lm, v) for v in orbit(lm, vertex)]
            assert all(conjugacy_equal(elements[0], e) for e in elements)

            k = rng.randint(2, 4)
            assert vertex_rotation(lm, vertex, k) == vertex_rotation(lm, vertex)

            if not names:
                continue

            gamma = Word([(rng.choice(names), rng.choice((1, -1))) for _ in range(2)])
            w, n = rotation_word(lm, vertex)
            changed = with_changed_lift(lm, gamma)
            assert vertex_rotation(changed, vertex) == normalize_rot(word_power(gamma, n) * w, n)

            moved, moved_n = rotation_word_from(lm, deck(gamma, LiftedVertex(Word(), vertex)))
            assert moved_n == n
            assert moved == gamma * w * invert(gamma)
