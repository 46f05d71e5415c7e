# -*- encoding: utf-8 -*-

"""Vertex maps homotopic to the identity and their lifts

A vertex map is given by the *track* of each vertex, i.e., the path that the
vertex follows while the identity is deformed into the map. Tracks fix both
the permutation of the vertices and the lift to the universal cover::

    from rotelem.vmap import VertexMap, validate_map, vertex_rotation

    lifted = validate_map(graph, labeling, VertexMap("f", tracks))
    print(vertex_rotation(lifted, "V2"))
"""

from dataclasses import dataclass, field, replace
from enum import Enum
from itertools import chain
import logging as log
from typing import Dict, List, Optional, Tuple

import numpy as np

from .errors import GraphError, HypothesisUnmet, MapError, ResourceCapExceeded
from .graphs import (
    CoherentLabeling,
    EdgePath,
    EdgeStep,
    Graph,
    LiftedPath,
    LiftedStep,
    LiftedVertex,
    Orientation,
    SpanningTree,
    deck,
    lift_path,
    reduce_steps,
    spanning_tree_containing,
)
from .words import RotationElement, Word, concat_reduce, invert, normalize_rot

__all__ = [
    "DEFAULT_MAX_PATH_LENGTH",
    "VertexMap",
    "LiftedVertexMap",
    "IterationMode",
    "validate_map",
    "edge_image",
    "apply_lift_vertex",
    "orbit",
    "period",
    "rotation_word",
    "rotation_word_from",
    "vertex_rotation",
    "with_changed_lift",
    "relabel",
    "analysis_map",
    "lifted_templates",
    "step_image",
    "iterate_edge_lift",
    "transition_matrix",
    "branch_count",
]

#: Maximum number of steps that an iterated path is allowed to reach
DEFAULT_MAX_PATH_LENGTH = 1_000_000


@dataclass(frozen=True)
class VertexMap:
    """The input description of a vertex map

    Args:
        name (str): name of the map, used in reports
        tracks (dict): maps every vertex to the :class:`.EdgePath` it
            follows under the homotopy
        images (dict): optional explicit images of edges; they are only
            checked against the images derived from the tracks
        sigma (dict): optional permutation of the vertices; when missing,
            it is read from the ends of the tracks
    """

    name: str
    tracks: Dict[str, EdgePath]
    images: Dict[str, EdgePath] = field(default_factory=dict)
    sigma: Optional[Dict[str, str]] = None


@dataclass(frozen=True)
class LiftedVertexMap:
    """A validated vertex map together with its lift to the universal cover

    The lift sends ``(u, V)`` to ``(gamma·u·t[V], sigma[V])``. Maps returned
    by :func:`validate_map` have ``gamma == 1``; use
    :func:`with_changed_lift` to pick another lift.
    """

    labeling: CoherentLabeling
    vmap: VertexMap
    sigma: Dict[str, str]
    t: Dict[str, Word]
    images: Dict[str, EdgePath]
    gamma: Word = Word()

    @property
    def graph(self) -> Graph:
        return self.labeling.graph

    @property
    def is_equivariant(self) -> bool:
        """True if the lift is the one selected by the tracks"""
        return self.gamma.is_identity


class IterationMode(Enum):
    """How :func:`iterate_edge_lift` treats backtracking between images"""

    BRANCHWISE = "branchwise"
    CONTRACTED = "contracted"


def _reduced_image(graph: Graph, tracks, edge) -> EdgePath:
    first = tracks[edge.initial]
    second = tracks[edge.terminal]
    steps = (
        tuple(step.inverse() for step in reversed(first.steps))
        + (EdgeStep(edge.id, Orientation.FORWARD),)
        + second.steps
    )
    return EdgePath(first.end(graph), reduce_steps(steps))


def validate_map(
    graph: Graph, labeling: CoherentLabeling, vmap: VertexMap
) -> LiftedVertexMap:
    """Check that ``vmap`` is a vertex map homotopic to the identity and lift it

    Raises:
        MapError: if a track is missing or does not fit the graph, if the
            tracks do not induce a permutation, or if an explicit edge image
            is not homotopic rel endpoints to the one derived from the tracks
    """
    for vertex in vmap.tracks:
        graph.check_vertex(vertex)

    sigma = {}
    for vertex in graph.vertices:
        track = vmap.tracks.get(vertex)
        if track is None:
            raise MapError(f"missing track for vertex {vertex}")

        if track.start != vertex:
            raise MapError(f"the track of {vertex} starts at {track.start}")

        try:
            sigma[vertex] = track.end(graph)
        except GraphError as exc:
            raise MapError(f"the track of {vertex} is not a path: {exc.message}")

    if vmap.sigma is not None:
        for vertex in graph.vertices:
            if vmap.sigma.get(vertex) != sigma[vertex]:
                raise MapError(
                    f"the track of {vertex} ends at {sigma[vertex]}, "
                    f"but the map sends {vertex} to {vmap.sigma.get(vertex)}"
                )

    preimage = {}
    for vertex in graph.vertices:
        target = sigma[vertex]
        if target in preimage:
            raise MapError(
                f"the map is not a permutation: {preimage[target]} and {vertex} "
                f"both go to {target}"
            )
        preimage[target] = vertex

    images = {edge.id: _reduced_image(graph, vmap.tracks, edge) for edge in graph.edges}
    for edge_id, explicit in vmap.images.items():
        graph.edge(edge_id)
        try:
            explicit.end(graph)
        except GraphError as exc:
            raise MapError(f"the image of {edge_id} is not a path: {exc.message}")

        if explicit.reduced() != images[edge_id]:
            raise MapError(
                f"the image of {edge_id} ('{explicit}') is not homotopic rel endpoints "
                f"to '{images[edge_id]}': the map is not homotopic to the identity "
                "under the given tracks"
            )

    t = {
        vertex: lift_path(labeling, LiftedVertex(Word(), vertex), vmap.tracks[vertex]).end.label
        for vertex in graph.vertices
    }

    log.debug(
        "map %s validated, lifted tracks: %s",
        vmap.name,
        ", ".join(f"{v}={t[v]}" for v in graph.vertices),
    )
    return LiftedVertexMap(labeling, vmap, sigma, t, images)


def edge_image(lm: LiftedVertexMap, edge_id: str) -> EdgePath:
    """Return the reduced image of an edge, ``track(V₁)⁻¹·E·track(V₂)``"""
    return lm.images[lm.graph.edge(edge_id).id]


def apply_lift_vertex(lm: LiftedVertexMap, x: LiftedVertex) -> LiftedVertex:
    return LiftedVertex(
        concat_reduce(lm.gamma, concat_reduce(x.label, lm.t[x.vertex])),
        lm.sigma[x.vertex],
    )


def orbit(lm: LiftedVertexMap, vertex: str) -> List[str]:
    """Return the cycle of the permutation that contains ``vertex``"""
    lm.graph.check_vertex(vertex)
    result = [vertex]
    current = lm.sigma[vertex]
    while current != vertex:
        result.append(current)
        current = lm.sigma[current]

    return result


def period(lm: LiftedVertexMap, vertex: str) -> int:
    return len(orbit(lm, vertex))


def rotation_word_from(
    lm: LiftedVertexMap, x: LiftedVertex, multiple: int = 1
) -> Tuple[Word, int]:
    """Return the raw pair ``(w, n)`` of the lifted vertex ``x``

    ``n`` is ``multiple`` times the period of the vertex, and ``w`` is the
    deck transformation with ``f̃ⁿ(x) = w·x``."""
    n = multiple * period(lm, x.vertex)
    current = x
    for _ in range(n):
        current = apply_lift_vertex(lm, current)

    assert current.vertex == x.vertex
    return concat_reduce(current.label, invert(x.label)), n


def rotation_word(lm: LiftedVertexMap, vertex: str, multiple: int = 1) -> Tuple[Word, int]:
    """Return the raw pair ``(w, m)`` of the lift of ``vertex`` with empty label"""
    return rotation_word_from(lm, LiftedVertex(Word(), vertex), multiple)


def vertex_rotation(lm: LiftedVertexMap, vertex: str, multiple: int = 1) -> RotationElement:
    """Return the rotation element of a vertex

    The lift is iterated ``multiple`` times the period of the vertex; the
    normalized result does not depend on ``multiple``."""
    w, n = rotation_word(lm, vertex, multiple)
    return normalize_rot(w, n)


def with_changed_lift(lm: LiftedVertexMap, gamma: Word) -> LiftedVertexMap:
    """Return the lift ``gamma·f̃``"""
    return replace(lm, gamma=concat_reduce(gamma, lm.gamma))


def relabel(lm: LiftedVertexMap, tree: SpanningTree) -> LiftedVertexMap:
    """Lift the same map using the coherent labeling of another spanning tree"""
    if not lm.is_equivariant:
        raise HypothesisUnmet(
            "a changed lift cannot be moved to another labeling, as the "
            "generators of the two labelings are not related"
        )

    return validate_map(lm.graph, CoherentLabeling(lm.graph, tree), lm.vmap)


def analysis_map(lm: LiftedVertexMap, edge_id: str) -> LiftedVertexMap:
    """Make sure that ``edge_id`` belongs to the spanning tree of the labeling

    If it does not, the map is lifted again with a tree containing the edge
    and rooted at the same basepoint."""
    lm.graph.edge(edge_id)
    if edge_id in lm.labeling.tree.edges:
        return lm

    tree = spanning_tree_containing(lm.graph, edge_id, lm.labeling.root)
    result = relabel(lm, tree)
    log.info(
        "edge %s is not in the spanning tree, switching to tree {%s}",
        edge_id,
        ", ".join(sorted(tree.edges)),
    )
    for name, loop_edge, loop in result.labeling.generator_table():
        log.info("  generator %s = %s, loop %s", name, loop_edge, loop)

    return result


def lifted_templates(lm: LiftedVertexMap) -> Dict[str, Tuple[LiftedStep, ...]]:
    """Lift the image of each edge from the image of its initial vertex

    The image of a lifted step ``u·Ẽ`` is the template of ``E`` moved by the
    deck transformation ``gamma·u``."""
    result = {}
    for edge in lm.graph.edges:
        start = LiftedVertex(lm.t[edge.initial], lm.sigma[edge.initial])
        result[edge.id] = lift_path(lm.labeling, start, lm.images[edge.id]).steps

    return result


def step_image(
    lm: LiftedVertexMap, step: LiftedStep, templates: Dict[str, Tuple[LiftedStep, ...]]
) -> Tuple[LiftedStep, ...]:
    """Return the lifted image of a single lifted step, in the step's direction"""
    g = concat_reduce(lm.gamma, step.prefix)
    image = tuple(deck(g, s) for s in templates[step.edge])
    if step.orientation == Orientation.FORWARD:
        return image

    return tuple(s.inverse() for s in reversed(image))


def iterate_edge_lift(
    lm: LiftedVertexMap,
    edge_id: str,
    n: int,
    mode: IterationMode = IterationMode.BRANCHWISE,
    max_path_length: int = DEFAULT_MAX_PATH_LENGTH,
) -> LiftedPath:
    """Return ``f̃ⁿ(Ẽ)`` as a lifted path

    In ``BRANCHWISE`` mode the images are only concatenated, so that each
    step corresponds to a branch of the n-th iterate of the linear model.
    In ``CONTRACTED`` mode backtracking is removed after every substitution.

    Raises:
        ResourceCapExceeded: if a level would exceed ``max_path_length`` steps
    """
    if n < 0:
        raise ValueError(f"the number of iterations must not be negative, got {n}")

    edge = lm.graph.edge(edge_id)
    templates = lifted_templates(lm)

    start = LiftedVertex(Word(), edge.initial)
    end = LiftedVertex(lm.labeling.theta[edge.id], edge.terminal)
    steps = (LiftedStep(Word(), edge.id, Orientation.FORWARD),)
    for _ in range(n):
        size = sum(len(templates[step.edge]) for step in steps)
        if size > max_path_length:
            raise ResourceCapExceeded(size, max_path_length)

        steps = tuple(chain.from_iterable(step_image(lm, step, templates) for step in steps))
        if mode == IterationMode.CONTRACTED:
            steps = reduce_steps(steps)

        start = apply_lift_vertex(lm, start)
        end = apply_lift_vertex(lm, end)

    return LiftedPath(start, end, steps)


def transition_matrix(lm: LiftedVertexMap) -> np.ndarray:
    """Return the transition matrix of the linear model

    Element ``[i, j]`` counts how many times the image of the i-th edge
    crosses the j-th edge, in either direction. Edges follow the declaration
    order of the graph."""
    index = {edge.id: idx for idx, edge in enumerate(lm.graph.edges)}
    result = np.zeros((len(index), len(index)), dtype=np.int64)
    for edge in lm.graph.edges:
        for step in lm.images[edge.id].steps:
            result[index[edge.id], index[step.edge]] += 1

    return result


def branch_count(
    lm: LiftedVertexMap, edge_id: str, n: int, cap: Optional[int] = None
) -> int:
    """Return the number of branches of the n-th iterate on an edge

    When ``cap`` is given, the computation stops as soon as the count
    exceeds it, and the partial count is returned."""
    matrix = transition_matrix(lm)
    counts = np.zeros(matrix.shape[0], dtype=np.int64)
    counts[[edge.id for edge in lm.graph.edges].index(lm.graph.edge(edge_id).id)] = 1
    for _ in range(n):
        counts = counts @ matrix
        if cap is not None and int(counts.sum()) > cap:
            break

    return int(counts.sum())
