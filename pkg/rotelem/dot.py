# -*- encoding: utf-8 -*-

"""DOT pictures of balls in the universal cover"""

import logging as log

import graphviz

from .graphs import CoherentLabeling, LiftedVertex, cover_ball
from .words import Word

__all__ = ["cover_digraph", "emit_dot"]


def cover_digraph(labeling: CoherentLabeling, radius: int) -> graphviz.Digraph:
    """Draw the lifted edges ``u·Ẽ`` with ``|u| < radius``

    Nodes are named after the lifted vertices, e.g. ``aV2`` for ``(a, V2)``
    and ``V1`` for ``(1, V1)``. Edges go from the lifted initial vertex to the
    lifted terminal vertex and are labeled with the name of the lifted edge.
    """
    dot = graphviz.Digraph(name=labeling.graph.name)
    root = str(LiftedVertex(Word(), labeling.root))
    dot.node(root)

    seen = {root}
    ball = cover_ball(labeling, radius)
    for step, start, end in ball:
        for vertex in (start, end):
            name = str(vertex)
            if name not in seen:
                seen.add(name)
                dot.node(name)

    for step, start, end in ball:
        dot.edge(str(start), str(end), label=str(step))

    log.debug("ball of radius %d: %d nodes, %d edges", radius, len(seen), len(ball))
    return dot


def emit_dot(labeling: CoherentLabeling, radius: int) -> str:
    """Return the DOT source of :func:`cover_digraph`"""
    return cover_digraph(labeling, radius).source
