# -*- encoding: utf-8 -*-

"""Random graphs and vertex maps

The generators take a :class:`random.Random` instance, so that a seed
reproduces the same sample."""

from random import Random
from typing import Tuple

import networkx as nx

from .graphs import (
    CoherentLabeling,
    EdgePath,
    EdgeStep,
    Graph,
    Orientation,
    bfs_spanning_tree,
    reduce_steps,
)
from .vmap import VertexMap

__all__ = ["random_graph", "random_vertex_map", "with_new_edge"]


def random_graph(rng: Random, max_vertices: int = 6, max_edges: int = 8) -> Graph:
    """Return a random connected graph without looped edges

    The graph has between 2 and ``max_vertices`` vertices and at most
    ``max_edges`` edges, parallel edges included."""
    num_vertices = rng.randint(2, max_vertices)
    vertices = [f"V{i + 1}" for i in range(num_vertices)]

    pairs = []
    for idx in range(1, num_vertices):
        pairs.append((vertices[rng.randrange(idx)], vertices[idx]))

    num_edges = rng.randint(max(num_vertices - 1, 1), max(max_edges, num_vertices - 1))
    while len(pairs) < num_edges:
        first, second = rng.sample(vertices, 2)
        pairs.append((first, second))

    rng.shuffle(pairs)
    edges = []
    for idx, (first, second) in enumerate(pairs):
        if rng.random() < 0.5:
            first, second = second, first
        edges.append((f"E{idx + 1}", first, second))

    return Graph(f"random{num_vertices}x{len(edges)}", vertices, edges)


def _shortest_path(graph: Graph, source: str, target: str) -> Tuple[EdgeStep, ...]:
    hops = nx.shortest_path(graph.to_networkx(), source, target)
    steps = []
    for first, second in zip(hops[:-1], hops[1:]):
        for edge in graph.edges:
            if (edge.initial, edge.terminal) == (first, second):
                steps.append(EdgeStep(edge.id, Orientation.FORWARD))
                break
            if (edge.initial, edge.terminal) == (second, first):
                steps.append(EdgeStep(edge.id, Orientation.BACKWARD))
                break

    return tuple(steps)


def _random_walk(rng: Random, graph: Graph, start: str, length: int):
    steps = []
    current = start
    for _ in range(length):
        edge = rng.choice(graph.incident_edges(current))
        if edge.initial == current:
            steps.append(EdgeStep(edge.id, Orientation.FORWARD))
            current = edge.terminal
        else:
            steps.append(EdgeStep(edge.id, Orientation.BACKWARD))
            current = edge.initial

    return tuple(steps), current


def random_vertex_map(rng: Random, graph: Graph, max_walk: int = 3) -> VertexMap:
    """Return a random vertex map homotopic to the identity

    Each track is a random walk of at most ``max_walk`` steps followed by a
    shortest path to the image of the vertex, reduced."""
    images = list(graph.vertices)
    rng.shuffle(images)

    tracks = {}
    for vertex, image in zip(graph.vertices, images):
        walk, current = _random_walk(rng, graph, vertex, rng.randint(0, max_walk))
        steps = reduce_steps(walk + _shortest_path(graph, current, image))
        tracks[vertex] = EdgePath(vertex, steps)

    return VertexMap("random", tracks)


def with_new_edge(
    rng: Random, graph: Graph, vmap: VertexMap, both: bool = False
) -> Tuple[Graph, VertexMap, str]:
    """Add a new edge ``X`` between two random distinct vertices ``Vi`` and ``Vj``

    Without ``both`` the tracks are unchanged, so the image of the new edge
    is ``Qi⁻¹·X·Qj`` and neither endpoint path begins with its lift. With
    ``both`` the track of ``Vi`` becomes ``X·T(Vj→Vi)·Qi`` and the one of
    ``Vj`` becomes ``~X·T(Vi→Vj)·Qj``, where ``T`` are paths in the spanning
    tree of the original graph.

    Returns:
        A tuple ``(graph, vmap, edge_id)``, where ``edge_id`` is the name
        given to ``X``.
    """
    first, second = rng.sample(graph.vertices, 2)
    edge_id = f"E{len(graph.edges) + 1}"
    new_graph = Graph(
        graph.name + "+",
        graph.vertices,
        [tuple(e) for e in graph.edges] + [(edge_id, first, second)],
    )

    tracks = dict(vmap.tracks)
    if both:
        labeling = CoherentLabeling(graph, bfs_spanning_tree(graph, graph.vertices[0]))

        def tree_between(source, target):
            down = labeling.tree_path(source)
            back = tuple(s.inverse() for s in reversed(down.steps))
            return reduce_steps(back + labeling.tree_path(target).steps)

        forward = EdgeStep(edge_id, Orientation.FORWARD)
        tracks[first] = EdgePath(
            first,
            reduce_steps((forward,) + tree_between(second, first) + vmap.tracks[first].steps),
        )
        tracks[second] = EdgePath(
            second,
            reduce_steps(
                (forward.inverse(),) + tree_between(first, second) + vmap.tracks[second].steps
            ),
        )

    return new_graph, VertexMap(vmap.name, tracks), edge_id
