# -*- encoding: utf-8 -*-

"""Graphs, spanning trees and the coherent labeling of the universal cover

A :class:`CoherentLabeling` names every vertex of the universal cover as a
pair ``(label, vertex)``, where ``label`` is a :class:`.Word`. Tree edges
carry the trivial word, every other edge carries a generator. Lifting a
path appends letters on the right of the label, while deck transformations
multiply labels on the left::

    from rotelem.graphs import Graph, SpanningTree, CoherentLabeling

    graph = Graph("circle", ["V1", "V2"], [("E1", "V1", "V2"), ("E2", "V2", "V1")])
    labeling = CoherentLabeling(graph, SpanningTree("V1", frozenset(["E1"])))
    print(labeling.theta["E2"])   # a
"""

from collections import deque, namedtuple
from dataclasses import dataclass
from enum import IntEnum
import logging as log
from string import ascii_lowercase
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from .errors import GraphError, LabelingError, UnknownIdentifier
from .words import Word, concat_reduce, invert

__all__ = [
    "Orientation",
    "Edge",
    "EdgeStep",
    "EdgePath",
    "Graph",
    "SpanningTree",
    "CoherentLabeling",
    "LiftedVertex",
    "LiftedStep",
    "LiftedPath",
    "reduce_steps",
    "check_spanning_tree",
    "bfs_spanning_tree",
    "spanning_tree_containing",
    "build_coherent_labeling",
    "lift_path",
    "contract",
    "loop_word",
    "word_to_loop",
    "cyclically_reduce_loop",
    "canonical_path",
    "geodesic",
    "deck",
    "cover_ball",
]


class Orientation(IntEnum):
    """Direction in which an edge is traversed"""

    FORWARD = 1
    BACKWARD = -1

    def flipped(self) -> "Orientation":
        return Orientation(-self.value)


#: An edge of a graph
#:
#: Fields are:
#: - ``id``: name of the edge (e.g., ``E1``)
#: - ``initial``: name of the vertex where the edge starts
#: - ``terminal``: name of the vertex where the edge ends
Edge = namedtuple("Edge", ["id", "initial", "terminal"])


class EdgeStep(namedtuple("EdgeStep", ["edge", "orientation"])):
    """One edge of a path, traversed forward (``E1``) or backward (``~E1``)"""

    __slots__ = ()

    @classmethod
    def parse(cls, token: str) -> "EdgeStep":
        if token.startswith("~"):
            return cls(token[1:], Orientation.BACKWARD)

        return cls(token, Orientation.FORWARD)

    def inverse(self) -> "EdgeStep":
        return EdgeStep(self.edge, Orientation(self.orientation).flipped())

    def __str__(self):
        return ("~" if self.orientation == Orientation.BACKWARD else "") + self.edge


def reduce_steps(steps: Sequence) -> Tuple:
    """Cancel adjacent steps that traverse the same edge in opposite directions

    This works both for :class:`EdgeStep` and for :class:`LiftedStep`
    sequences, as both compare equal to their own inverse's inverse."""
    stack = []
    for step in steps:
        if stack and stack[-1] == step.inverse():
            stack.pop()
        else:
            stack.append(step)

    return tuple(stack)


class Graph:
    """A finite connected directed multigraph without looped edges

    Args:
        name (str): name of the graph, used in reports
        vertices (list): vertex names, in declaration order
        edges (list): triples ``(id, initial, terminal)``, in declaration
            order; parallel edges are allowed
    """

    def __init__(self, name: str, vertices, edges):
        self.name = name
        self.vertices = list(vertices)
        self.edges = [Edge(*edge) for edge in edges]

        if not self.vertices:
            raise GraphError("a graph needs at least one vertex")

        self._vertex_set = set()
        for vertex in self.vertices:
            if vertex in self._vertex_set:
                raise GraphError(f"duplicate vertex {vertex}")
            self._vertex_set.add(vertex)

        self._edges = {}
        for edge in self.edges:
            if edge.id in self._edges:
                raise GraphError(f"duplicate edge {edge.id}")

            for vertex in (edge.initial, edge.terminal):
                if vertex not in self._vertex_set:
                    raise UnknownIdentifier(
                        f"edge {edge.id} refers to unknown vertex {vertex}"
                    )

            if edge.initial == edge.terminal:
                raise GraphError(
                    f"looped edges not allowed: {edge.id} starts and ends at {edge.initial}"
                )

            self._edges[edge.id] = edge

        if not nx.is_connected(self.to_networkx()):
            raise GraphError(f"graph {name} is not connected")

    def to_networkx(self) -> nx.MultiGraph:
        """Return an undirected ``networkx`` multigraph keyed by edge name"""
        result = nx.MultiGraph()
        result.add_nodes_from(self.vertices)
        for edge in self.edges:
            result.add_edge(edge.initial, edge.terminal, key=edge.id)

        return result

    @property
    def rank(self) -> int:
        """Number of free generators of the fundamental group"""
        return len(self.edges) - len(self.vertices) + 1

    def has_vertex(self, vertex: str) -> bool:
        return vertex in self._vertex_set

    def check_vertex(self, vertex: str):
        if vertex not in self._vertex_set:
            raise UnknownIdentifier(f"unknown vertex {vertex}")

    def edge(self, edge_id: str) -> Edge:
        try:
            return self._edges[edge_id]
        except KeyError:
            raise UnknownIdentifier(f"unknown edge {edge_id}")

    def incident_edges(self, vertex: str) -> List[Edge]:
        """Return the edges touching ``vertex``, in declaration order"""
        return [edge for edge in self.edges if vertex in (edge.initial, edge.terminal)]

    def step_endpoints(self, step: EdgeStep) -> Tuple[str, str]:
        edge = self.edge(step.edge)
        if step.orientation == Orientation.FORWARD:
            return edge.initial, edge.terminal

        return edge.terminal, edge.initial


@dataclass(frozen=True)
class EdgePath:
    """A path in a graph, given by its first vertex and a list of steps

    The start vertex is needed because the empty path must still sit on a
    vertex. Continuity is checked by :meth:`end`, which needs the graph."""

    start: str
    steps: Tuple[EdgeStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(EdgeStep(*s) for s in self.steps))

    @classmethod
    def parse(cls, text: str, start: str) -> "EdgePath":
        """Build a path from a literal like ``E1 ~E3 E4``"""
        return cls(start, tuple(EdgeStep.parse(token) for token in text.split()))

    def end(self, graph: Graph) -> str:
        """Return the last vertex of the path, checking its continuity"""
        current = self.start
        for idx, step in enumerate(self.steps):
            initial, terminal = graph.step_endpoints(step)
            if initial != current:
                raise GraphError(
                    f"step #{idx + 1} ({step}) of path '{self}' starts at "
                    f"{initial}, but the path is at {current}"
                )
            current = terminal

        return current

    def reduced(self) -> "EdgePath":
        return EdgePath(self.start, reduce_steps(self.steps))

    def inverse(self, graph: Graph) -> "EdgePath":
        return EdgePath(
            self.end(graph), tuple(step.inverse() for step in reversed(self.steps))
        )

    def then(self, other: "EdgePath") -> "EdgePath":
        return EdgePath(self.start, self.steps + other.steps)

    def uses(self, edge_id: str) -> bool:
        return any(step.edge == edge_id for step in self.steps)

    def __len__(self):
        return len(self.steps)

    def __str__(self):
        return " ".join(str(step) for step in self.steps)


#: A spanning tree of a graph
#:
#: Fields are:
#: - ``root``: the basepoint, i.e., the vertex whose lift has the empty label
#: - ``edges``: a ``frozenset`` with the names of the edges in the tree
SpanningTree = namedtuple("SpanningTree", ["root", "edges"])


def check_spanning_tree(graph: Graph, tree: SpanningTree):
    """Raise :class:`.GraphError` if ``tree`` is not a spanning tree of ``graph``"""
    graph.check_vertex(tree.root)

    subgraph = nx.MultiGraph()
    subgraph.add_nodes_from(graph.vertices)
    for edge_id in sorted(tree.edges):
        edge = graph.edge(edge_id)
        subgraph.add_edge(edge.initial, edge.terminal, key=edge.id)

    if not nx.is_tree(subgraph):
        edge_list = ", ".join(sorted(tree.edges))
        raise GraphError(f"edges {{{edge_list}}} do not form a spanning tree")


def bfs_spanning_tree(graph: Graph, root: str) -> SpanningTree:
    """Grow a spanning tree breadth-first from ``root``

    Edges are examined in declaration order, so the result (and the names
    of the generators derived from it) is deterministic."""
    graph.check_vertex(root)

    visited = {root}
    queue = deque([root])
    chosen = []
    while queue:
        vertex = queue.popleft()
        for edge in graph.incident_edges(vertex):
            other = edge.terminal if edge.initial == vertex else edge.initial
            if other not in visited:
                visited.add(other)
                chosen.append(edge.id)
                queue.append(other)

    return SpanningTree(root, frozenset(chosen))


def spanning_tree_containing(graph: Graph, edge_id: str, root: str) -> SpanningTree:
    """Return a spanning tree rooted at ``root`` that contains ``edge_id``

    The tree is the minimum spanning tree where ``edge_id`` weighs zero and
    every other edge weighs its position in the declaration order."""
    graph.edge(edge_id)
    graph.check_vertex(root)

    weighted = nx.MultiGraph()
    weighted.add_nodes_from(graph.vertices)
    for idx, edge in enumerate(graph.edges):
        weight = 0 if edge.id == edge_id else idx + 1
        weighted.add_edge(edge.initial, edge.terminal, key=edge.id, weight=weight)

    tree_edges = nx.minimum_spanning_edges(
        weighted, algorithm="kruskal", weight="weight", keys=True, data=False
    )
    return SpanningTree(root, frozenset(key for _, _, key in tree_edges))


#: A vertex of the universal cover
#:
#: Fields are:
#: - ``label``: a :class:`.Word`
#: - ``vertex``: name of the vertex of the graph below it
class LiftedVertex(namedtuple("LiftedVertex", ["label", "vertex"])):
    __slots__ = ()

    def __str__(self):
        prefix = "" if self.label.is_identity else str(self.label)
        return prefix + self.vertex


class LiftedStep(namedtuple("LiftedStep", ["prefix", "edge", "orientation"])):
    """An edge of the universal cover, traversed in some direction

    The lifted edge ``prefix·Ẽ`` starts at ``(prefix, initial)`` and ends at
    ``(prefix·θ(E), terminal)``; ``orientation`` tells in which direction
    the step runs along it."""

    __slots__ = ()

    def inverse(self) -> "LiftedStep":
        return LiftedStep(
            self.prefix, self.edge, Orientation(self.orientation).flipped()
        )

    def __str__(self):
        prefix = "" if self.prefix.is_identity else str(self.prefix)
        tilde = "~" if self.orientation == Orientation.BACKWARD else ""
        return f"{prefix}{tilde}{self.edge}"


@dataclass(frozen=True)
class LiftedPath:
    """A path in the universal cover

    Both endpoints are stored, so that the empty path and contracted paths
    keep track of where they are."""

    start: LiftedVertex
    end: LiftedVertex
    steps: Tuple[LiftedStep, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def reversed(self) -> "LiftedPath":
        return LiftedPath(
            self.end, self.start, tuple(step.inverse() for step in reversed(self.steps))
        )

    def then(self, other: "LiftedPath") -> "LiftedPath":
        if self.end != other.start:
            raise LabelingError(
                f"cannot join a path ending at {self.end} with one starting at {other.start}"
            )

        return LiftedPath(self.start, other.end, self.steps + other.steps)

    def __len__(self):
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __str__(self):
        return " ".join(str(step) for step in self.steps)


class CoherentLabeling:
    """Labeling of the universal cover induced by a spanning tree

    Non-tree edges receive the generators ``a``, ``b``, ``c``… in
    declaration order. The loop representing a generator runs along the
    tree from the root to the initial vertex of its edge, crosses the edge
    and goes back to the root along the tree.

    Attributes:
        graph (Graph): the graph being labeled
        tree (SpanningTree): the tree used for the labeling
        theta (dict): maps each edge name to its :class:`.Word` (the
            identity for tree edges, a generator otherwise)
        generators (dict): maps each generator name to the name of its edge
        loops (dict): maps each generator name to its loop at the root
    """

    def __init__(self, graph: Graph, tree: SpanningTree):
        check_spanning_tree(graph, tree)

        self.graph = graph
        self.tree = tree

        non_tree = [edge for edge in graph.edges if edge.id not in tree.edges]
        if len(non_tree) > len(ascii_lowercase):
            raise GraphError(
                f"the fundamental group has rank {len(non_tree)}, "
                f"at most {len(ascii_lowercase)} generators are supported"
            )

        self.generators = {
            name: edge.id for name, edge in zip(ascii_lowercase, non_tree)
        }
        self.theta = {edge.id: Word() for edge in graph.edges}
        for name, edge_id in self.generators.items():
            self.theta[edge_id] = Word.generator(name)

        self._tree_steps = self._walk_tree()
        self.loops = {
            name: self._generator_loop(graph.edge(edge_id))
            for name, edge_id in self.generators.items()
        }

    def _walk_tree(self) -> Dict[str, Tuple[EdgeStep, ...]]:
        paths = {self.tree.root: ()}
        queue = deque([self.tree.root])
        while queue:
            vertex = queue.popleft()
            for edge in self.graph.incident_edges(vertex):
                if edge.id not in self.tree.edges:
                    continue

                if edge.initial == vertex:
                    other, step = edge.terminal, EdgeStep(edge.id, Orientation.FORWARD)
                else:
                    other, step = edge.initial, EdgeStep(edge.id, Orientation.BACKWARD)

                if other not in paths:
                    paths[other] = paths[vertex] + (step,)
                    queue.append(other)

        return paths

    def _generator_loop(self, edge: Edge) -> EdgePath:
        back = tuple(step.inverse() for step in reversed(self._tree_steps[edge.terminal]))
        return EdgePath(
            self.tree.root,
            self._tree_steps[edge.initial]
            + (EdgeStep(edge.id, Orientation.FORWARD),)
            + back,
        )

    @property
    def root(self) -> str:
        return self.tree.root

    def tree_path(self, vertex: str) -> EdgePath:
        """Return the path along the tree from the root to ``vertex``"""
        self.graph.check_vertex(vertex)
        return EdgePath(self.tree.root, self._tree_steps[vertex])

    def generator_of(self, edge_id: str) -> Optional[str]:
        theta = self.theta[self.graph.edge(edge_id).id]
        return None if theta.is_identity else theta[0].generator

    def lift_step(
        self, vertex: LiftedVertex, step: EdgeStep
    ) -> Tuple[LiftedStep, LiftedVertex]:
        """Lift one step starting from ``vertex``

        Returns:
            A pair containing the lifted step and the vertex where it ends.
        """
        edge = self.graph.edge(step.edge)
        theta = self.theta[edge.id]
        if step.orientation == Orientation.FORWARD:
            if vertex.vertex != edge.initial:
                raise LabelingError(
                    f"cannot lift {step} from {vertex}: the edge starts at {edge.initial}"
                )
            return (
                LiftedStep(vertex.label, edge.id, Orientation.FORWARD),
                LiftedVertex(concat_reduce(vertex.label, theta), edge.terminal),
            )

        if vertex.vertex != edge.terminal:
            raise LabelingError(
                f"cannot lift {step} from {vertex}: the edge ends at {edge.terminal}"
            )
        prefix = concat_reduce(vertex.label, invert(theta))
        return (
            LiftedStep(prefix, edge.id, Orientation.BACKWARD),
            LiftedVertex(prefix, edge.initial),
        )

    def step_start(self, step: LiftedStep) -> LiftedVertex:
        """Return the vertex where a lifted step begins"""
        edge = self.graph.edge(step.edge)
        if step.orientation == Orientation.FORWARD:
            return LiftedVertex(step.prefix, edge.initial)

        return LiftedVertex(
            concat_reduce(step.prefix, self.theta[edge.id]), edge.terminal
        )

    def generator_table(self) -> List[Tuple[str, str, EdgePath]]:
        """Return ``(generator, edge, loop)`` triples, in generator order"""
        return [
            (name, edge_id, self.loops[name]) for name, edge_id in self.generators.items()
        ]


def build_coherent_labeling(graph: Graph, tree: SpanningTree) -> CoherentLabeling:
    return CoherentLabeling(graph, tree)


def lift_path(
    labeling: CoherentLabeling, start: LiftedVertex, path: EdgePath
) -> LiftedPath:
    """Lift ``path`` to the universal cover, starting from ``start``"""
    if path.start != start.vertex:
        raise LabelingError(
            f"path '{path}' starts at {path.start}, not at {start.vertex}"
        )

    current = start
    steps = []
    for step in path.steps:
        lifted, current = labeling.lift_step(current, step)
        steps.append(lifted)

    return LiftedPath(start, current, tuple(steps))


def contract(path: LiftedPath) -> LiftedPath:
    """Remove backtracking from a lifted path

    As the universal cover is a tree, the result is the unique shortest
    path between the endpoints of ``path``."""
    return LiftedPath(path.start, path.end, reduce_steps(path.steps))


def loop_word(labeling: CoherentLabeling, path: EdgePath) -> Word:
    """Return the element of the fundamental group represented by a loop at the root"""
    root = labeling.root
    if path.start != root or path.end(labeling.graph) != root:
        raise LabelingError(f"path '{path}' is not a loop at the root {root}")

    return lift_path(labeling, LiftedVertex(Word(), root), path).end.label


def word_to_loop(labeling: CoherentLabeling, w: Word) -> EdgePath:
    """Return the reduced loop at the root representing ``w``"""
    steps = []
    for letter in w:
        try:
            loop = labeling.loops[letter.generator]
        except KeyError:
            raise UnknownIdentifier(f"unknown generator {letter.generator}")

        if letter.sign > 0:
            steps.extend(loop.steps)
        else:
            steps.extend(step.inverse() for step in reversed(loop.steps))

    return EdgePath(labeling.root, reduce_steps(steps))


def cyclically_reduce_loop(graph: Graph, path: EdgePath) -> EdgePath:
    """Reduce a loop and strip mutually inverse steps from its two ends"""
    steps = reduce_steps(path.steps)
    start = path.start
    i = 0
    while 2 * i + 1 < len(steps) and steps[i] == steps[len(steps) - 1 - i].inverse():
        start = graph.step_endpoints(steps[i])[1]
        i += 1

    return EdgePath(start, steps[i : len(steps) - i])


def canonical_path(labeling: CoherentLabeling, x: LiftedVertex) -> LiftedPath:
    """Return the shortest path from ``(1, root)`` to ``x``

    The path spells the label of ``x`` with generator loops and then follows
    the tree down to the vertex of ``x``."""
    origin = LiftedVertex(Word(), labeling.root)
    spelled = lift_path(labeling, origin, word_to_loop(labeling, x.label))
    descent = lift_path(labeling, spelled.end, labeling.tree_path(x.vertex))
    return contract(spelled.then(descent))


def geodesic(labeling: CoherentLabeling, x: LiftedVertex, y: LiftedVertex) -> LiftedPath:
    """Return the shortest path from ``x`` to ``y`` in the universal cover"""
    return contract(canonical_path(labeling, x).reversed().then(canonical_path(labeling, y)))


def deck(
    g: Word, obj: Union[LiftedVertex, LiftedStep, LiftedPath]
) -> Union[LiftedVertex, LiftedStep, LiftedPath]:
    """Apply the deck transformation ``g``, which multiplies labels on the left"""
    if isinstance(obj, LiftedVertex):
        return LiftedVertex(concat_reduce(g, obj.label), obj.vertex)

    if isinstance(obj, LiftedStep):
        return LiftedStep(concat_reduce(g, obj.prefix), obj.edge, obj.orientation)

    if isinstance(obj, LiftedPath):
        return LiftedPath(
            deck(g, obj.start), deck(g, obj.end), tuple(deck(g, step) for step in obj.steps)
        )

    raise TypeError(f"cannot apply a deck transformation to {type(obj).__name__}")


def cover_ball(
    labeling: CoherentLabeling, radius: int
) -> List[Tuple[LiftedStep, LiftedVertex, LiftedVertex]]:
    """List the lifted edges ``u·Ẽ`` whose label ``u`` is shorter than ``radius``

    Labels are visited breadth-first, starting from the identity. With
    ``radius == 1`` the result is the lift of the spanning tree together
    with one lift of each non-tree edge.

    Returns:
        A list of triples ``(step, start, end)``, with forward steps.
    """
    if radius < 1:
        return []

    labels = [Word()]
    frontier = [Word()]
    for _ in range(radius - 1):
        new_frontier = []
        for label in frontier:
            for name in labeling.generators:
                for sign in (1, -1):
                    candidate = concat_reduce(label, Word.generator(name, sign))
                    if len(candidate) == len(label) + 1:
                        new_frontier.append(candidate)
        labels.extend(new_frontier)
        frontier = new_frontier

    log.debug("ball of radius %d has %d labels", radius, len(labels))

    result = []
    for label in labels:
        for edge in labeling.graph.edges:
            result.append(
                (
                    LiftedStep(label, edge.id, Orientation.FORWARD),
                    LiftedVertex(label, edge.initial),
                    LiftedVertex(concat_reduce(label, labeling.theta[edge.id]), edge.terminal),
                )
            )

    return result
