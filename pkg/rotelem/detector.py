# -*- encoding: utf-8 -*-

"""Detection of rotation elements through paths in the universal cover

For an edge ``E`` from ``V₁`` to ``V₂`` in the spanning tree, the module
builds the geodesics ``P̃₁`` and ``P̃₂`` from the lifts of the endpoints to
their translates by the rotation words, and reads rotation elements off the
lifts of ``E`` that survive in the contraction of ``P̃₁⁻ᵏⁿ·Ẽ·P̃₂ᵏᵐ``.
:func:`classify_edge` decides which existence results apply to an edge, and
:func:`predicted_elements` turns them into a finite list of guaranteed
rotation elements.
"""

from collections import namedtuple
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging as log
import math
from typing import Dict, FrozenSet, List, Optional, Tuple

from .errors import HypothesisUnmet
from .graphs import (
    CoherentLabeling,
    LiftedPath,
    LiftedStep,
    LiftedVertex,
    Orientation,
    contract,
    cyclically_reduce_loop,
    geodesic,
    word_to_loop,
)
from .vmap import LiftedVertexMap, analysis_map, rotation_word
from .words import (
    IDENTITY,
    RotationElement,
    Word,
    common_primitive,
    concat_reduce,
    exponent_of,
    initial_subwords,
    invert,
    normalize_rot,
    word_power,
)

__all__ = [
    "DEFAULT_MAX_SCALE",
    "CaseTag",
    "Detection",
    "EdgeClassification",
    "Prediction",
    "Family",
    "p_path",
    "begins_with",
    "belongs",
    "gamma_words",
    "contraction_witness",
    "detect_in_contraction",
    "classify_edge",
    "rationals_between",
    "prediction_families",
    "predicted_elements",
]

#: Largest scale factor tried when a family needs a large enough power
DEFAULT_MAX_SCALE = 8


class CaseTag(Enum):
    """Which existence results apply to an edge"""

    FP_NEITHER = "FpNeither"
    FP_BOTH = "FpBoth"
    ONE_BEGINS = "OneBegins"
    BELONGS_ONE = "BelongsOne"
    BELONGS_BOTH_NEITHER_BEGIN = "BelongsBothNeitherBegin"
    BELONGS_BOTH_BOTH_BEGIN = "BelongsBothBothBegin"
    COMMON_ROOT_INTERVAL = "CommonRootInterval"
    BELONGS_BOTH_NOT_POWERS = "BelongsBothNotPowers"
    NO_GUARANTEE = "NoGuarantee"


#: A lift of the analysed edge found in a contracted path
#:
#: Fields are:
#: - ``gamma``: the label of the lift (a :class:`.Word`)
#: - ``orientation``: the direction of the step in the path
#: - ``element``: the rotation element it guarantees
Detection = namedtuple("Detection", ["gamma", "orientation", "element"])


def _check_equivariant(lm: LiftedVertexMap):
    if not lm.is_equivariant:
        raise HypothesisUnmet(
            "detection needs the lift selected by the tracks, not a changed lift"
        )


def _check_tree_edge(lm: LiftedVertexMap, edge_id: str):
    if edge_id not in lm.labeling.tree.edges:
        raise HypothesisUnmet(f"edge {edge_id} is not in the spanning tree of the labeling")


def p_path(lm: LiftedVertexMap, vertex: str, w: Word, k: int) -> LiftedPath:
    """Return the geodesic from ``(1, vertex)`` to ``(wᵏ, vertex)``"""
    return geodesic(
        lm.labeling, LiftedVertex(Word(), vertex), LiftedVertex(word_power(w, k), vertex)
    )


def begins_with(path: LiftedPath, edge_id: str) -> bool:
    """Tell if the first step of ``path`` is the lift of ``edge_id`` with empty label"""
    if not path.steps:
        return False

    first = path.steps[0]
    return first.prefix.is_identity and first.edge == edge_id


def belongs(labeling: CoherentLabeling, edge_id: str, w: Word) -> bool:
    """Tell if the cyclically reduced loop representing ``w`` crosses ``edge_id``"""
    labeling.graph.edge(edge_id)
    if w.is_identity:
        return False

    loop = cyclically_reduce_loop(labeling.graph, word_to_loop(labeling, w))
    return loop.uses(edge_id)


def _occurs(path: LiftedPath, edge_id: str, label: Word) -> bool:
    return any(step.edge == edge_id and step.prefix == label for step in path.steps)


def _window_holds(lm, edge_id, vertex, w, gamma, k) -> bool:
    path = p_path(lm, vertex, w, k)
    return all(
        _occurs(path, edge_id, concat_reduce(word_power(w, i), gamma)) == (0 <= i < k)
        for i in range(-1, k + 1)
    )


def gamma_words(
    lm: LiftedVertexMap, edge_id: str, vertex: str, w: Word, max_power: int = 3
) -> FrozenSet[Word]:
    """Return the initial subwords ``γ`` of ``w`` that label lifts of the edge

    A word ``γ`` is returned when ``γẼ`` occurs in the path from ``vertex`` to
    its translate by ``w``, and when, for every ``k ≤ max_power``, the lift
    ``wⁱγẼ`` occurs in the path to the translate by ``wᵏ`` exactly for
    ``0 ≤ i < k``.

    Raises:
        HypothesisUnmet: if the edge does not belong to ``w``, or if no
            initial subword passes the check
    """
    _check_tree_edge(lm, edge_id)
    if not belongs(lm.labeling, edge_id, w):
        raise HypothesisUnmet(f"edge {edge_id} does not belong to {w}")

    prefixes = set(initial_subwords(w))
    candidates = {
        step.prefix
        for step in p_path(lm, vertex, w, 1).steps
        if step.edge == edge_id and step.prefix in prefixes
    }

    result = frozenset(
        gamma
        for gamma in candidates
        if all(_window_holds(lm, edge_id, vertex, w, gamma, k) for k in range(1, max_power + 1))
    )
    if not result:
        raise HypothesisUnmet(
            f"no initial subword of {w} labels a lift of {edge_id} on the path from {vertex}"
        )

    return result


def contraction_witness(lm: LiftedVertexMap, edge_id: str, k: int) -> LiftedPath:
    """Return the contraction of ``P̃₁⁻ᵏⁿ·Ẽ·P̃₂ᵏᵐ``

    ``m`` and ``n`` are the periods of the two endpoints of the edge, which
    must be in the spanning tree. The result joins the same two vertices as
    ``f̃ᵏᵐⁿ(Ẽ)``, so their contractions coincide."""
    _check_equivariant(lm)
    _check_tree_edge(lm, edge_id)

    edge = lm.graph.edge(edge_id)
    w1, m = rotation_word(lm, edge.initial)
    w2, n = rotation_word(lm, edge.terminal)

    lifted_edge = LiftedPath(
        LiftedVertex(Word(), edge.initial),
        LiftedVertex(Word(), edge.terminal),
        (LiftedStep(Word(), edge.id, Orientation.FORWARD),),
    )
    path = (
        p_path(lm, edge.initial, w1, k * n)
        .reversed()
        .then(lifted_edge)
        .then(p_path(lm, edge.terminal, w2, k * m))
    )
    return contract(path)


def detect_in_contraction(lm: LiftedVertexMap, edge_id: str, k: int) -> List[Detection]:
    """Return the rotation elements guaranteed by the lifts of the edge
    that survive in :func:`contraction_witness`"""
    edge = lm.graph.edge(edge_id)
    _, m = rotation_word(lm, edge.initial)
    _, n = rotation_word(lm, edge.terminal)

    return [
        Detection(step.prefix, step.orientation, normalize_rot(step.prefix, k * m * n))
        for step in contraction_witness(lm, edge_id, k).steps
        if step.edge == edge_id
    ]


@dataclass(frozen=True)
class EdgeClassification:
    """Hypotheses that hold for an edge, and the case they determine

    Index 1 refers to the initial vertex of the edge and index 2 to the
    terminal one. ``common_root`` is a triple ``(w, k1, k2)`` with
    ``w1 = w^k1`` and ``w2 = w^k2``; ``side`` is set for the cases where a
    single endpoint carries a family of elements."""

    edge: str
    w1: Word
    w2: Word
    m: int
    n: int
    begins1: bool
    begins2: bool
    belongs1: bool
    belongs2: bool
    common_root: Optional[Tuple[Word, int, int]]
    case: CaseTag
    side: Optional[int] = None
    gammas1: FrozenSet[Word] = frozenset()
    gammas2: FrozenSet[Word] = frozenset()
    analysis: Optional[LiftedVertexMap] = field(default=None, compare=False, repr=False)

    @property
    def bounds(self) -> Optional[Tuple[Fraction, Fraction]]:
        """Return ``(k1/m, k2/n)`` when the rotation words have a common root"""
        if self.common_root is None:
            return None

        _, k1, k2 = self.common_root
        return Fraction(k1, self.m), Fraction(k2, self.n)

    def to_dict(self):
        result = {
            "edge": self.edge,
            "case": self.case.value,
            "side": self.side,
            "w1": str(self.w1),
            "w2": str(self.w2),
            "m": self.m,
            "n": self.n,
            "begins1": self.begins1,
            "begins2": self.begins2,
            "belongs1": self.belongs1,
            "belongs2": self.belongs2,
            "gammas1": sorted(str(g) for g in self.gammas1),
            "gammas2": sorted(str(g) for g in self.gammas2),
            "common_root": None,
        }
        if self.common_root is not None:
            root, k1, k2 = self.common_root
            low, high = self.bounds
            result["common_root"] = {
                "root": str(root),
                "k1": k1,
                "k2": k2,
                "bounds": [str(low), str(high)],
            }

        if self.analysis is not None:
            result["tree"] = sorted(self.analysis.labeling.tree.edges)

        return result


def _decide(labeling, edge_id, begins1, begins2, belongs1, belongs2, common_root, m, n):
    if begins1 == begins2:
        if belongs1 and belongs2:
            if begins1:
                return CaseTag.BELONGS_BOTH_BOTH_BEGIN, None
            return CaseTag.BELONGS_BOTH_NEITHER_BEGIN, None

        side = 1 if belongs1 else (2 if belongs2 else None)
        return (CaseTag.FP_BOTH if begins1 else CaseTag.FP_NEITHER), side

    if common_root is not None:
        root, k1, k2 = common_root
        if belongs(labeling, edge_id, root) and Fraction(k1, m) != Fraction(k2, n):
            return CaseTag.COMMON_ROOT_INTERVAL, None

    if belongs1 and belongs2:
        if common_root is None:
            return CaseTag.BELONGS_BOTH_NOT_POWERS, None
        return CaseTag.NO_GUARANTEE, None

    if belongs1 != belongs2:
        return CaseTag.BELONGS_ONE, (1 if belongs1 else 2)

    return CaseTag.ONE_BEGINS, None


def _safe_gammas(lm, edge_id, vertex, w, flag) -> FrozenSet[Word]:
    if not flag:
        return frozenset()

    try:
        return gamma_words(lm, edge_id, vertex, w)
    except HypothesisUnmet as exc:
        log.warning("%s", exc.message)
        return frozenset()


def classify_edge(lm: LiftedVertexMap, edge_id: str) -> EdgeClassification:
    """Compute the hypotheses of an edge and the case they fall in

    If the edge is not in the spanning tree, the map is lifted again with a
    tree that contains it (see :func:`.analysis_map`); the words in the
    result use the generators of that labeling."""
    lm = analysis_map(lm, edge_id)
    _check_equivariant(lm)

    edge = lm.graph.edge(edge_id)
    w1, m = rotation_word(lm, edge.initial)
    w2, n = rotation_word(lm, edge.terminal)

    begins1 = begins_with(p_path(lm, edge.initial, w1, 1), edge_id)
    begins2 = begins_with(p_path(lm, edge.terminal, w2, 1), edge_id)
    belongs1 = belongs(lm.labeling, edge_id, w1)
    belongs2 = belongs(lm.labeling, edge_id, w2)

    common_root = None
    root = common_primitive(w1, w2)
    if root is not None:
        common_root = (root, exponent_of(w1, root), exponent_of(w2, root))

    case, side = _decide(
        lm.labeling, edge_id, begins1, begins2, belongs1, belongs2, common_root, m, n
    )
    log.debug("edge %s classified as %s (side %s)", edge_id, case.value, side)

    return EdgeClassification(
        edge=edge_id,
        w1=w1,
        w2=w2,
        m=m,
        n=n,
        begins1=begins1,
        begins2=begins2,
        belongs1=belongs1,
        belongs2=belongs2,
        common_root=common_root,
        case=case,
        side=side,
        gammas1=_safe_gammas(lm, edge_id, edge.initial, w1, belongs1),
        gammas2=_safe_gammas(lm, edge_id, edge.terminal, w2, belongs2),
        analysis=lm,
    )


@dataclass(frozen=True)
class Prediction:
    """A rotation element that an existence result guarantees on an edge

    ``element`` is ``(w^p·gamma)^(1/q)``, where ``w`` is the rotation word of
    the endpoint on ``side``; ``q`` is also the period at which the
    contraction argument produces the point (``period_witness``), and
    ``exponent`` is the rational of the family that produced it. ``witnessed``
    is false when no lift of the edge with the predicted label was found in
    the contraction witness up to the largest scale tried."""

    element: RotationElement
    period_witness: int
    source: str
    gamma: Optional[Word] = None
    side: Optional[int] = None
    p: int = 0
    q: int = 1
    exponent: Fraction = Fraction(0)
    witnessed: bool = True

    def to_dict(self):
        return {
            "element": str(self.element),
            "period_witness": self.period_witness,
            "source": self.source,
            "gamma": None if self.gamma is None else str(self.gamma),
            "side": self.side,
            "p": self.p,
            "q": self.q,
            "exponent": str(self.exponent),
            "witnessed": self.witnessed,
        }


@dataclass(frozen=True)
class Family:
    """Symbolic description of an infinite family of guaranteed elements

    The family contains ``(base^p·γ)^(1/q)`` for every rational ``p/q`` in
    the open interval ``(lower, upper)`` and every ``γ`` in ``gammas``. The
    identity family has no base."""

    source: str
    base: Optional[Word]
    gammas: FrozenSet[Word]
    lower: Fraction
    upper: Fraction
    side: Optional[int] = None

    def __str__(self):
        if self.base is None:
            return "1"

        gammas = ", ".join(sorted(str(g) for g in self.gammas))
        return f"({self.base}^p γ)^(1/q), p/q in ({self.lower}, {self.upper}), γ in {{{gammas}}}"

    def to_dict(self):
        return {
            "source": self.source,
            "form": str(self),
            "base": None if self.base is None else str(self.base),
            "gammas": sorted(str(g) for g in self.gammas),
            "lower": str(self.lower),
            "upper": str(self.upper),
            "side": self.side,
        }


def rationals_between(lower: Fraction, upper: Fraction, max_denominator: int) -> List[Fraction]:
    """Return the rationals in the open interval ``(lower, upper)`` with
    denominator at most ``max_denominator``, in increasing order"""
    result = set()
    for q in range(1, max_denominator + 1):
        p = math.floor(lower * q) + 1
        while Fraction(p, q) < upper:
            result.add(Fraction(p, q))
            p += 1

    return sorted(result)


def _source(c: EdgeClassification) -> str:
    return {
        CaseTag.FP_NEITHER: "fixed-point-neither",
        CaseTag.FP_BOTH: "fixed-point-both",
        CaseTag.BELONGS_ONE: "belongs-one",
        CaseTag.BELONGS_BOTH_NEITHER_BEGIN: "belongs-both-neither-begin",
        CaseTag.BELONGS_BOTH_BOTH_BEGIN: "belongs-both-both-begin",
        CaseTag.COMMON_ROOT_INTERVAL: "common-root-interval",
        CaseTag.BELONGS_BOTH_NOT_POWERS: "belongs-both-not-powers",
    }.get(c.case, "none")


#: One-sided family used internally by :func:`predicted_elements`
#:
#: The labels ``ws^j·γ`` are searched on the side ``side``, and the element
#: ``ws^r`` is scaled by ``scale`` (the exponent of ``ws`` over the root in
#: which the range is expressed).
_SideFamily = namedtuple(
    "_SideFamily", ["side", "ws", "gammas", "lower", "upper", "scale", "base"]
)


def _side_families(c: EdgeClassification) -> List[_SideFamily]:
    sides = {1: (c.w1, c.m, c.gammas1), 2: (c.w2, c.n, c.gammas2)}
    result = []

    def whole_side(side, gammas=None):
        ws, period, own_gammas = sides[side]
        chosen = own_gammas if gammas is None else gammas
        result.append(
            _SideFamily(side, ws, chosen, Fraction(0), Fraction(1, period), 1, ws)
        )

    if c.case in (CaseTag.FP_NEITHER, CaseTag.FP_BOTH, CaseTag.BELONGS_ONE):
        if c.side is not None:
            whole_side(c.side)
    elif c.case in (
        CaseTag.BELONGS_BOTH_NEITHER_BEGIN,
        CaseTag.BELONGS_BOTH_NOT_POWERS,
    ):
        whole_side(1)
        whole_side(2)
    elif c.case == CaseTag.BELONGS_BOTH_BOTH_BEGIN:
        whole_side(1, frozenset([Word()]))
        whole_side(2, frozenset([Word()]))
    elif c.case == CaseTag.COMMON_ROOT_INTERVAL:
        root, k1, k2 = c.common_root
        ks = {1: k1, 2: k2}
        low, high = c.bounds
        hi_side, lo_side = (2, 1) if high > low else (1, 2)
        hi_bound, lo_bound = max(low, high), min(low, high)

        if hi_bound <= 0:
            # Both bounds are non positive: express the range with the inverse root
            root, ks = invert(root), {1: -k1, 2: -k2}
            hi_side, lo_side = lo_side, hi_side
            hi_bound, lo_bound = -lo_bound, -hi_bound

        ws, _, gammas = sides[hi_side]
        result.append(
            _SideFamily(hi_side, ws, gammas, max(lo_bound, Fraction(0)), hi_bound, ks[hi_side], root)
        )
        if lo_bound < 0:
            ws, _, gammas = sides[lo_side]
            result.append(
                _SideFamily(lo_side, ws, gammas, Fraction(0), -lo_bound, -ks[lo_side], invert(root))
            )

    return result


def _has_identity(c: EdgeClassification) -> bool:
    return c.case in (
        CaseTag.FP_NEITHER,
        CaseTag.FP_BOTH,
        CaseTag.BELONGS_BOTH_NEITHER_BEGIN,
        CaseTag.BELONGS_BOTH_BOTH_BEGIN,
    )


def prediction_families(c: EdgeClassification) -> List[Family]:
    """Return the symbolic families guaranteed by the case of ``c``"""
    source = _source(c)
    result = []
    if _has_identity(c):
        result.append(Family(source, None, frozenset([Word()]), Fraction(0), Fraction(0)))

    for fam in _side_families(c):
        result.append(
            Family(
                "belongs-one" if c.case in (CaseTag.FP_NEITHER, CaseTag.FP_BOTH) else source,
                fam.base,
                fam.gammas,
                fam.lower,
                fam.upper,
                fam.side,
            )
        )

    return result


def predicted_elements(
    c: EdgeClassification,
    max_denominator: int,
    max_scale: int = DEFAULT_MAX_SCALE,
) -> List[Prediction]:
    """Enumerate the guaranteed rotation elements of an edge

    The identity element, when the case guarantees a fixed point, comes
    first with period 1. Every rational ``r = l/k`` of a family with
    ``k ≤ max_denominator`` produces one prediction for each valid ``γ``:
    the label ``ws^(c·l·m·n)·γ`` is looked up among the lifts of the edge in
    the contraction at power ``c·k``, for the smallest scale
    ``c ≤ max_scale`` that works, and the element is
    ``(ws^(c·l·m·n)·γ)^(1/(c·k·m·n))``. Labels that are never found are
    still predicted at scale 1, with ``witnessed`` set to false.
    """
    if c.analysis is None:
        raise HypothesisUnmet("the classification does not carry its lifted map")

    lm = c.analysis
    source = _source(c)
    mn = c.m * c.n
    witnesses: Dict[int, LiftedPath] = {}

    def witness(power):
        if power not in witnesses:
            witnesses[power] = contraction_witness(lm, c.edge, power)
        return witnesses[power]

    result = []
    if _has_identity(c):
        result.append(
            Prediction(IDENTITY, 1, source, gamma=Word(), p=0, q=1, exponent=Fraction(0))
        )

    family_source = "belongs-one" if c.case in (CaseTag.FP_NEITHER, CaseTag.FP_BOTH) else source
    for fam in _side_families(c):
        for r in rationals_between(fam.lower, fam.upper, max_denominator):
            # r is measured on the root, the labels are powers of ws
            ratio = r / fam.scale
            l, k = ratio.numerator, ratio.denominator

            def prediction(gamma, scale, witnessed):
                p = scale * l * mn
                q = scale * k * mn
                return Prediction(
                    normalize_rot(concat_reduce(word_power(fam.ws, p), gamma), q),
                    q,
                    family_source,
                    gamma=gamma,
                    side=fam.side,
                    p=p,
                    q=q,
                    exponent=r,
                    witnessed=witnessed,
                )

            for gamma in sorted(fam.gammas, key=str):
                scale = next(
                    (
                        s
                        for s in range(1, max_scale + 1)
                        if _occurs(
                            witness(s * k),
                            c.edge,
                            concat_reduce(word_power(fam.ws, s * l * mn), gamma),
                        )
                    ),
                    None,
                )
                if scale is None:
                    log.warning(
                        "no lift of %s labeled (%s)^%s·%s survives up to scale %d",
                        c.edge,
                        fam.ws,
                        r,
                        gamma,
                        max_scale,
                    )
                    result.append(prediction(gamma, 1, False))
                else:
                    result.append(prediction(gamma, scale, True))

    return result
