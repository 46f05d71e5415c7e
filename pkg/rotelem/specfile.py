# -*- encoding: utf-8 -*-

"""Reader and writer for the line-oriented spec files

A spec file describes a graph and, optionally, a vertex map on it::

    # The house graph
    graph house
    vertex V1 V2 V3 V4 V5
    edge E1 V5 V1
    edge E2 V1 V2
    ...
    basepoint V1
    tree E1 E3 E4 E5

    map f
    track V1 E2
    ...

Text after ``#`` is ignored. Edge paths are whitespace-separated edge names,
with a ``~`` in front of edges traversed backward. When ``basepoint`` is
missing, the first vertex is used; when ``tree`` is missing, the spanning
tree is grown breadth-first from the basepoint.
"""

from dataclasses import dataclass
import hashlib
import logging as log
from pathlib import Path
import re
from typing import Dict, List, Optional, Tuple

from .errors import (
    GraphError,
    MapError,
    SpecError,
    SpecSyntaxError,
    UnknownIdentifier,
)
from .graphs import (
    CoherentLabeling,
    EdgePath,
    EdgeStep,
    Graph,
    SpanningTree,
    bfs_spanning_tree,
)
from .vmap import LiftedVertexMap, VertexMap, validate_map

__all__ = ["SpecFile", "parse_spec", "parse_spec_text", "echo"]

_TOKEN_RE = re.compile(r"\S+")

# keyword -> (minimum, maximum) number of arguments
_ARITY = {
    "graph": (1, 1),
    "vertex": (1, None),
    "edge": (3, 3),
    "basepoint": (1, 1),
    "tree": (0, None),
    "map": (1, 1),
    "track": (1, None),
    "image": (1, None),
}


@dataclass
class SpecFile:
    """The content of a spec file, already validated

    Attributes:
        graph (Graph): the graph
        tree (SpanningTree): the spanning tree used for the labeling
        vertex_map (VertexMap): the map, or ``None`` if the file has no
            ``map`` block
        source (str): name of the file (or ``<string>``)
        digest (str): SHA-256 of the text of the file
        explicit_tree (bool): whether the tree was given in the file
    """

    graph: Graph
    tree: SpanningTree
    vertex_map: Optional[VertexMap]
    source: str = "<string>"
    digest: str = ""
    explicit_tree: bool = True

    @property
    def labeling(self) -> CoherentLabeling:
        return CoherentLabeling(self.graph, self.tree)

    def lifted(self) -> LiftedVertexMap:
        """Validate the map and lift it with the labeling of the file"""
        if self.vertex_map is None:
            raise SpecError(f"{self.source} has no map block")

        return validate_map(self.graph, self.labeling, self.vertex_map)

    def model(self):
        """Return a tuple that identifies the content, ignoring formatting"""
        vmap = self.vertex_map
        return (
            self.graph.name,
            tuple(self.graph.vertices),
            tuple(self.graph.edges),
            self.tree.root,
            self.tree.edges,
            None
            if vmap is None
            else (
                vmap.name,
                tuple(sorted((v, p.steps) for v, p in vmap.tracks.items())),
                tuple(sorted((e, p.steps) for e, p in vmap.images.items())),
            ),
        )


class _Line:
    def __init__(self, number: int, text: str):
        self.number = number
        content = text.split("#", 1)[0]
        self.tokens = [(m.group(0), m.start() + 1) for m in _TOKEN_RE.finditer(content)]

    @property
    def keyword(self):
        return self.tokens[0][0]

    @property
    def args(self) -> List[Tuple[str, int]]:
        return self.tokens[1:]

    def error(self, cls, message, column=None):
        return cls(message, self.number, column)


def _check_name(line: _Line, name: str, column: int):
    if name.startswith("~"):
        raise line.error(SpecSyntaxError, f"invalid name {name!r}", column)


def _parse_path(line: _Line, tokens, start: str, edges: Dict[str, tuple]) -> EdgePath:
    steps = []
    for token, column in tokens:
        step = EdgeStep.parse(token)
        if not step.edge or step.edge.startswith("~"):
            raise line.error(SpecSyntaxError, f"invalid step {token!r}", column)
        if step.edge not in edges:
            raise line.error(UnknownIdentifier, f"unknown edge {step.edge}", column)
        steps.append(step)

    return EdgePath(start, tuple(steps))


def parse_spec_text(text: str, source: str = "<string>") -> SpecFile:
    """Parse the text of a spec file

    Raises:
        SpecSyntaxError: for unknown keywords, wrong number of arguments,
            repeated blocks
        UnknownIdentifier: for references to undeclared names
        InvariantViolation: when the graph, the tree or the map are not valid
    """
    graph_name = None
    vertices: Dict[str, _Line] = {}
    edges: Dict[str, Tuple[str, str, _Line]] = {}
    basepoint = None
    tree_line = None
    map_line = None
    tracks: Dict[str, Tuple[_Line, list]] = {}
    images: Dict[str, Tuple[_Line, list]] = {}

    lines = [_Line(number, raw) for number, raw in enumerate(text.splitlines(), start=1)]
    for line in lines:
        if not line.tokens:
            continue

        keyword = line.keyword
        if keyword not in _ARITY:
            raise line.error(SpecSyntaxError, f"unknown keyword {keyword!r}", 1)

        low, high = _ARITY[keyword]
        count = len(line.args)
        if count < low or (high is not None and count > high):
            expected = str(low) if low == high else f"at least {low}"
            raise line.error(
                SpecSyntaxError,
                f"'{keyword}' expects {expected} argument(s), got {count}",
                line.tokens[0][1],
            )

        if keyword == "graph":
            if graph_name is not None:
                raise line.error(SpecSyntaxError, "repeated 'graph' line", 1)
            graph_name = line.args[0][0]

        elif keyword == "vertex":
            for name, column in line.args:
                _check_name(line, name, column)
                if name in vertices:
                    raise line.error(GraphError, f"duplicate vertex {name}", column)
                vertices[name] = line

        elif keyword == "edge":
            (name, col_name), (initial, col_initial), (terminal, col_terminal) = line.args
            _check_name(line, name, col_name)
            if name in edges:
                raise line.error(GraphError, f"duplicate edge {name}", col_name)
            for vertex, column in ((initial, col_initial), (terminal, col_terminal)):
                if vertex not in vertices:
                    raise line.error(UnknownIdentifier, f"unknown vertex {vertex}", column)
            if initial == terminal:
                raise line.error(
                    GraphError,
                    f"looped edges not allowed: {name} starts and ends at {initial}",
                    col_name,
                )
            edges[name] = (initial, terminal, line)

        elif keyword == "basepoint":
            if basepoint is not None:
                raise line.error(SpecSyntaxError, "repeated 'basepoint' line", 1)
            name, column = line.args[0]
            if name not in vertices:
                raise line.error(UnknownIdentifier, f"unknown vertex {name}", column)
            basepoint = name

        elif keyword == "tree":
            if tree_line is not None:
                raise line.error(SpecSyntaxError, "repeated 'tree' line", 1)
            for name, column in line.args:
                if name not in edges:
                    raise line.error(UnknownIdentifier, f"unknown edge {name}", column)
            tree_line = line

        elif keyword == "map":
            if map_line is not None:
                raise line.error(SpecSyntaxError, "repeated 'map' line", 1)
            map_line = line

        elif keyword in ("track", "image"):
            if map_line is None:
                raise line.error(SpecSyntaxError, f"'{keyword}' outside a map block", 1)

            name, column = line.args[0]
            table = tracks if keyword == "track" else images
            known = vertices if keyword == "track" else edges
            if name not in known:
                kind = "vertex" if keyword == "track" else "edge"
                raise line.error(UnknownIdentifier, f"unknown {kind} {name}", column)
            if name in table:
                raise line.error(SpecSyntaxError, f"repeated {keyword} for {name}", column)
            table[name] = (line, line.args[1:])

    if graph_name is None:
        raise SpecSyntaxError("missing 'graph' line")

    if not vertices:
        raise SpecSyntaxError("missing 'vertex' line")

    graph = Graph(
        graph_name,
        list(vertices),
        [(name, initial, terminal) for name, (initial, terminal, _) in edges.items()],
    )

    if basepoint is None:
        basepoint = graph.vertices[0]

    if tree_line is None:
        tree = bfs_spanning_tree(graph, basepoint)
    else:
        tree = SpanningTree(basepoint, frozenset(name for name, _ in tree_line.args))
        try:
            CoherentLabeling(graph, tree)
        except GraphError as exc:
            raise tree_line.error(GraphError, exc.message, 1)

    vertex_map = None
    if map_line is not None:
        for vertex in graph.vertices:
            if vertex not in tracks:
                raise map_line.error(MapError, f"missing track for vertex {vertex}")

        parsed_tracks = {}
        for vertex, (line, tokens) in tracks.items():
            path = _parse_path(line, tokens, vertex, edges)
            try:
                path.end(graph)
            except GraphError as exc:
                raise line.error(MapError, f"the track of {vertex} is not a path: {exc.message}")
            parsed_tracks[vertex] = path

        parsed_images = {}
        for edge_id, (line, tokens) in images.items():
            if not tokens:
                raise line.error(MapError, f"the image of {edge_id} is empty")
            first_step = EdgeStep.parse(tokens[0][0])
            if first_step.edge in edges:
                start = graph.step_endpoints(first_step)[0]
            else:
                start = graph.vertices[0]
            parsed_images[edge_id] = _parse_path(line, tokens, start, edges)

        vertex_map = VertexMap(map_line.args[0][0], parsed_tracks, parsed_images)
        try:
            validate_map(graph, CoherentLabeling(graph, tree), vertex_map)
        except MapError as exc:
            raise map_line.error(MapError, exc.message)

    log.debug("parsed %s: %d vertices, %d edges", source, len(graph.vertices), len(graph.edges))
    return SpecFile(
        graph,
        tree,
        vertex_map,
        source=source,
        digest=hashlib.sha256(text.encode("utf-8")).hexdigest(),
        explicit_tree=tree_line is not None,
    )


def parse_spec(path) -> SpecFile:
    """Read and parse a spec file

    Raises:
        SpecSyntaxError: if the file is not valid UTF-8 text
    """
    path = Path(path)
    with path.open("rb") as inpf:
        data = inpf.read()

    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        raise SpecSyntaxError(f"{path} is not UTF-8 text ({exc.reason})", line, column)

    return parse_spec_text(text, source=str(path))


def echo(spec: SpecFile) -> str:
    """Return the canonical text of a spec file

    Parsing the result gives back the same model."""
    graph = spec.graph
    lines = [f"graph {graph.name}", "vertex " + " ".join(graph.vertices)]
    lines.extend(f"edge {e.id} {e.initial} {e.terminal}" for e in graph.edges)
    lines.append(f"basepoint {spec.tree.root}")
    tree_edges = [e.id for e in graph.edges if e.id in spec.tree.edges]
    lines.append(" ".join(["tree"] + tree_edges))

    vmap = spec.vertex_map
    if vmap is not None:
        lines.append("")
        lines.append(f"map {vmap.name}")
        for vertex in graph.vertices:
            lines.append(" ".join(["track", vertex] + [str(s) for s in vmap.tracks[vertex].steps]))
        for edge in graph.edges:
            if edge.id in vmap.images:
                lines.append(
                    " ".join(["image", edge.id] + [str(s) for s in vmap.images[edge.id].steps])
                )

    return "\n".join(lines) + "\n"
