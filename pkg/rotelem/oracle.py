# -*- encoding: utf-8 -*-

"""Exact enumeration of periodic points of the linear model

The linear model maps every edge linearly onto its reduced image, so the
n-th iterate restricted to an edge is piecewise affine: the edge splits into
*branches*, each mapped onto a lifted edge. A branch that lands on a lift
``γẼ`` of the edge it comes from contains exactly one point ``x`` (or a whole
interval) with ``f̃ⁿ(x̃) = γ·x̃``; the point is found by solving an affine
equation with exact rationals.

The functions here are the ground truth against which the predictions of
:mod:`rotelem.detector` are checked.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging as log
from typing import Dict, List, Optional, Sequence, Tuple

from tqdm import tqdm

from .detector import (
    DEFAULT_MAX_SCALE,
    EdgeClassification,
    Prediction,
    belongs,
    classify_edge,
    predicted_elements,
)
from .errors import HypothesisUnmet, ResourceCapExceeded
from .graphs import LiftedStep, Orientation
from .vmap import (
    DEFAULT_MAX_PATH_LENGTH,
    LiftedVertexMap,
    analysis_map,
    branch_count,
    lifted_templates,
    orbit,
    rotation_word,
    step_image,
)
from .words import (
    RotationElement,
    Word,
    concat_reduce,
    conjugacy_equal,
    element_sort_key,
    invert,
    normalize_rot,
    s_set_periods,
)

__all__ = [
    "Branch",
    "PointKind",
    "PeriodicPointRecord",
    "branch_decomposition",
    "enumerate_periodic",
    "deduplicate_records",
    "candidate_periods",
    "PredictionOutcome",
    "VerificationReport",
    "verify_predictions",
    "SClosureOutcome",
    "SClosureReport",
    "s_closure_check",
    "OneOrbitReport",
    "one_orbit_analysis",
]


@dataclass(frozen=True)
class Branch:
    """A subinterval of an edge that the n-th iterate maps onto a lifted edge

    The affine map sends ``left`` to the start of ``target`` and ``right`` to
    its end when the target is traversed forward, and the other way round
    otherwise. ``itinerary`` lists the position of the branch inside the
    image at each level of the composition."""

    left: Fraction
    right: Fraction
    target: LiftedStep
    itinerary: Tuple[int, ...] = ()

    @property
    def width(self) -> Fraction:
        return self.right - self.left

    @property
    def orientation(self) -> Orientation:
        return Orientation(self.target.orientation)

    def apply(self, t: Fraction) -> Fraction:
        """Return the coordinate on the target edge of the point ``t``"""
        s = (t - self.left) / self.width
        if self.orientation == Orientation.FORWARD:
            return s

        return 1 - s

    def to_dict(self):
        return {
            "interval": [str(self.left), str(self.right)],
            "target": str(self.target),
            "itinerary": list(self.itinerary),
        }


class PointKind(Enum):
    """Where a periodic point sits on the closed edge"""

    INTERIOR = "interior"
    DEGENERATE = "degenerate"
    VERTEX = "vertex"


@dataclass(frozen=True)
class PeriodicPointRecord:
    """A point of the edge whose lift is moved by the deck transformation
    ``rotation_word`` after ``period`` iterations

    ``location`` is the exact coordinate of the point; for degenerate
    records it is the pair of ends of the interval made of such points, and
    ``vertex`` names the vertex for records sitting at an end of the edge."""

    edge: str
    kind: PointKind
    location: object
    period: int
    rotation_word: Word
    element: RotationElement
    branch: Branch = field(compare=False)
    vertex: Optional[str] = None

    @property
    def itinerary(self) -> Tuple[int, ...]:
        return self.branch.itinerary

    def location_str(self) -> str:
        if self.kind == PointKind.DEGENERATE:
            left, right = self.location
            return f"[{left}, {right}]"

        if self.kind == PointKind.VERTEX:
            return self.vertex

        return str(self.location)

    def to_dict(self):
        if self.kind == PointKind.DEGENERATE:
            location = [str(x) for x in self.location]
        elif self.kind == PointKind.VERTEX:
            location = self.vertex
        else:
            location = str(self.location)

        return {
            "edge": self.edge,
            "kind": self.kind.value,
            "location": location,
            "period": self.period,
            "rotation_word": str(self.rotation_word),
            "element": str(self.element),
            "branch": self.branch.to_dict(),
        }


def _check_cap(lm: LiftedVertexMap, edge_id: str, n: int, cap: int):
    count = branch_count(lm, edge_id, n, cap=cap)
    log.debug("iterate %d of %s has %d branches (cap %d)", n, edge_id, count, cap)
    if count > cap:
        raise ResourceCapExceeded(count, cap)


def branch_decomposition(
    lm: LiftedVertexMap,
    edge_id: str,
    n: int,
    max_path_length: int = DEFAULT_MAX_PATH_LENGTH,
) -> List[Branch]:
    """Split an edge into the branches of the n-th iterate of the linear model

    Branches are returned from left to right; their targets are the steps
    of ``iterate_edge_lift(lm, edge_id, n, BRANCHWISE)``.

    Raises:
        ResourceCapExceeded: if there would be more than ``max_path_length``
            branches
    """
    if n < 1:
        raise ValueError(f"the number of iterations must be positive, got {n}")

    edge = lm.graph.edge(edge_id)
    _check_cap(lm, edge.id, n, max_path_length)
    templates = lifted_templates(lm)

    items = [(LiftedStep(Word(), edge.id, Orientation.FORWARD), Fraction(1), ())]
    for _ in range(n):
        new_items = []
        for step, width, itinerary in items:
            image = step_image(lm, step, templates)
            share = width / len(image)
            for idx, target in enumerate(image):
                new_items.append((target, share, itinerary + (idx,)))
        items = new_items

    result = []
    left = Fraction(0)
    for target, width, itinerary in items:
        result.append(Branch(left, left + width, target, itinerary))
        left += width

    assert left == 1
    return result


def _solve(lm: LiftedVertexMap, branch: Branch, n: int) -> PeriodicPointRecord:
    edge = lm.graph.edge(branch.target.edge)
    gamma = branch.target.prefix
    element = normalize_rot(gamma, n)

    def record(kind, location, vertex=None):
        return PeriodicPointRecord(
            edge.id, kind, location, n, gamma, element, branch, vertex
        )

    if branch.orientation == Orientation.BACKWARD:
        return record(PointKind.INTERIOR, branch.right / (1 + branch.width))

    if branch.width == 1:
        return record(PointKind.DEGENERATE, (Fraction(0), Fraction(1)))

    t = branch.left / (1 - branch.width)
    if t == 0:
        return record(PointKind.VERTEX, t, edge.initial)

    if t == 1:
        return record(PointKind.VERTEX, t, edge.terminal)

    return record(PointKind.INTERIOR, t)


def enumerate_periodic(
    lm: LiftedVertexMap,
    edge_id: str,
    n: int,
    max_path_length: int = DEFAULT_MAX_PATH_LENGTH,
) -> List[PeriodicPointRecord]:
    """Return the points of the closed edge that the n-th iterate of the
    lifted linear model sends to a translate of themselves

    Only branches landing on a lift of the same edge can contain such
    points. Records are sorted by position along the edge."""
    edge = lm.graph.edge(edge_id)
    return [
        _solve(lm, branch, n)
        for branch in branch_decomposition(lm, edge.id, n, max_path_length)
        if branch.target.edge == edge.id
    ]


def _record_key(record: PeriodicPointRecord):
    if record.kind == PointKind.VERTEX:
        return ("vertex", record.vertex, record.period, record.element)

    return (record.kind.value, record.edge, record.location, record.period)


def deduplicate_records(records: Sequence[PeriodicPointRecord]) -> List[PeriodicPointRecord]:
    """Drop repeated records, merging vertex records found on different edges"""
    seen = set()
    result = []
    for record in records:
        key = _record_key(record)
        if key not in seen:
            seen.add(key)
            result.append(record)

    return result


def candidate_periods(witness: int, bound: int) -> List[int]:
    """Return the periods to search for a prediction with a given witness

    These are the divisors of ``witness`` in increasing order, followed by
    its multiples, all not larger than ``bound``."""
    divisors = [d for d in range(1, min(witness, bound) + 1) if witness % d == 0]
    multiples = list(range(2 * witness, bound + 1, witness))
    return divisors + multiples


class _RecordCache:
    def __init__(self, lm, edge_id, max_path_length):
        self.lm = lm
        self.edge_id = edge_id
        self.max_path_length = max_path_length
        self.records = {}

    def __call__(self, n):
        if n not in self.records:
            self.records[n] = enumerate_periodic(
                self.lm, self.edge_id, n, self.max_path_length
            )
        return self.records[n]


@dataclass
class PredictionOutcome:
    """The result of looking for a prediction among the oracle records

    ``status`` is ``matched``, ``unmatched``, or ``beyond-bound`` when the
    period witness exceeds the period bound and no record was found."""

    prediction: Prediction
    status: str
    record: Optional[PeriodicPointRecord] = None
    searched: List[int] = field(default_factory=list)

    @property
    def matched(self) -> bool:
        return self.status == "matched"

    def to_dict(self):
        return {
            "prediction": self.prediction.to_dict(),
            "status": self.status,
            "record": None if self.record is None else self.record.to_dict(),
            "searched_periods": self.searched,
        }


@dataclass
class VerificationReport:
    """Outcomes of :func:`verify_predictions`

    ``all_matched`` only holds when every prediction was found; predictions
    whose period witness is beyond the period bound are counted apart."""

    edge: str
    period_bound: int
    outcomes: List[PredictionOutcome] = field(default_factory=list)

    def count(self, status: str) -> int:
        return sum(1 for outcome in self.outcomes if outcome.status == status)

    @property
    def all_matched(self) -> bool:
        return all(outcome.matched for outcome in self.outcomes)

    def summary(self) -> str:
        return (
            f"{self.count('matched')} matched, {self.count('unmatched')} unmatched, "
            f"{self.count('beyond-bound')} beyond the period bound"
        )

    def to_dict(self):
        return {
            "edge": self.edge,
            "period_bound": self.period_bound,
            "all_matched": self.all_matched,
            "matched": self.count("matched"),
            "unmatched": self.count("unmatched"),
            "beyond_bound": self.count("beyond-bound"),
            "outcomes": [outcome.to_dict() for outcome in self.outcomes],
        }


def verify_predictions(
    lm: LiftedVertexMap,
    edge_id: str,
    predictions: Sequence[Prediction],
    period_bound: int,
    max_path_length: int = DEFAULT_MAX_PATH_LENGTH,
    progress: bool = False,
) -> VerificationReport:
    """Look for each prediction among the periodic points of the edge

    A prediction is matched by the first record, at one of the periods
    returned by :func:`candidate_periods`, whose element is conjugate to
    the predicted one."""
    lm = analysis_map(lm, edge_id)
    records = _RecordCache(lm, edge_id, max_path_length)
    report = VerificationReport(edge_id, period_bound)

    for prediction in tqdm(
        predictions, desc=f"verifying {edge_id}", disable=not progress, leave=False
    ):
        searched = candidate_periods(prediction.period_witness, period_bound)
        match = None
        for n in searched:
            match = next(
                (r for r in records(n) if conjugacy_equal(r.element, prediction.element)),
                None,
            )
            if match is not None:
                break

        if match is not None:
            status = "matched"
        elif prediction.period_witness > period_bound:
            status = "beyond-bound"
        else:
            status = "unmatched"
            log.warning(
                "prediction %s (%s) on %s not realized up to period %d",
                prediction.element,
                prediction.source,
                edge_id,
                period_bound,
            )

        report.outcomes.append(PredictionOutcome(prediction, status, match, searched))

    return report


@dataclass
class SClosureOutcome:
    element: RotationElement
    period: int
    sources: Tuple[str, str]
    confirmed: bool
    record: Optional[PeriodicPointRecord] = None

    def to_dict(self):
        return {
            "element": str(self.element),
            "period": self.period,
            "sources": list(self.sources),
            "confirmed": self.confirmed,
            "record": None if self.record is None else self.record.to_dict(),
        }


@dataclass
class SClosureReport:
    edge: str
    period_bound: int
    max_len: int
    vertex_mode: str
    representatives: List[PeriodicPointRecord] = field(default_factory=list)
    vertex_pair: Optional[Tuple[Word, int]] = None
    outcomes: List[SClosureOutcome] = field(default_factory=list)

    @property
    def all_confirmed(self) -> bool:
        return all(outcome.confirmed for outcome in self.outcomes)

    def to_dict(self):
        return {
            "edge": self.edge,
            "period_bound": self.period_bound,
            "max_len": self.max_len,
            "vertex_mode": self.vertex_mode,
            "representatives": [r.to_dict() for r in self.representatives],
            "vertex_pair": None
            if self.vertex_pair is None
            else [str(self.vertex_pair[0]), self.vertex_pair[1]],
            "all_confirmed": self.all_confirmed,
            "outcomes": [outcome.to_dict() for outcome in self.outcomes],
        }


VERTEX_MODES = ("off", "initial", "terminal")


def _vertex_pair(lm, edge, mode, max_path_length) -> Tuple[Word, int]:
    if mode == "initial":
        w, m = rotation_word(lm, edge.initial)
        branch = branch_decomposition(lm, edge.id, m, max_path_length)[0]
        where = "begin"
    else:
        w2, m = rotation_word(lm, edge.terminal)
        theta = lm.labeling.theta[edge.id]
        w = concat_reduce(concat_reduce(theta, w2), invert(theta))
        branch = branch_decomposition(lm, edge.id, m, max_path_length)[-1]
        where = "end"

    if branch.target.edge != edge.id or branch.orientation != Orientation.FORWARD:
        raise HypothesisUnmet(
            f"the image of {edge.id} under the iterate {m} does not {where} "
            f"with {edge.id} itself (it {where}s with {branch.target})"
        )

    return w, m


def s_closure_check(
    lm: LiftedVertexMap,
    edge_id: str,
    period_bound: int,
    max_len: int,
    vertex_mode: str = "off",
    max_path_length: int = DEFAULT_MAX_PATH_LENGTH,
    progress: bool = False,
) -> SClosureReport:
    """Check that the rotation elements of the edge are closed under S-sets

    Interior points with rotation elements ``w₁^(1/m)`` and ``w₂^(1/n)``
    force points with every element of their S-set. The check takes one
    representative record per element found up to ``period_bound``, forms
    the S-set of every pair of representatives (including the rotation pair
    of an endpoint when ``vertex_mode`` is ``initial`` or ``terminal``) and
    looks for each element with denominator within the bound. Vertex
    records only count as a match in vertex mode.

    Raises:
        HypothesisUnmet: if ``vertex_mode`` asks for an endpoint whose image
            does not begin (or end) with the edge itself
    """
    if vertex_mode not in VERTEX_MODES:
        raise ValueError(f"unknown vertex mode {vertex_mode!r}")

    lm = analysis_map(lm, edge_id)
    edge = lm.graph.edge(edge_id)
    records = _RecordCache(lm, edge.id, max_path_length)
    report = SClosureReport(edge.id, period_bound, max_len, vertex_mode)

    if vertex_mode != "off":
        report.vertex_pair = _vertex_pair(lm, edge, vertex_mode, max_path_length)

    representatives: Dict[RotationElement, PeriodicPointRecord] = {}
    for n in tqdm(range(1, period_bound + 1), desc="periods", disable=not progress, leave=False):
        for record in records(n):
            if record.kind == PointKind.VERTEX:
                continue
            if not any(conjugacy_equal(record.element, e) for e in representatives):
                representatives[record.element] = record

    report.representatives = sorted(
        representatives.values(), key=lambda r: element_sort_key(r.element)
    )

    pairs = [(str(r.element), (r.rotation_word, r.period)) for r in report.representatives]
    if report.vertex_pair is not None:
        pairs.append((f"vertex-{vertex_mode}", report.vertex_pair))

    def admissible(record):
        return vertex_mode != "off" or record.kind != PointKind.VERTEX

    checked = {}
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            (name1, pair1), (name2, pair2) = pairs[i], pairs[j]
            for element, denominator in s_set_periods(pair1, pair2, max_len).items():
                if denominator > period_bound:
                    log.debug(
                        "S-set element %s needs period %d > %d, skipped",
                        element,
                        denominator,
                        period_bound,
                    )
                    continue

                if (element, denominator) in checked:
                    continue

                match = next(
                    (
                        r
                        for r in records(denominator)
                        if admissible(r) and conjugacy_equal(r.element, element)
                    ),
                    None,
                )
                outcome = SClosureOutcome(
                    element, denominator, (name1, name2), match is not None, match
                )
                checked[(element, denominator)] = outcome
                report.outcomes.append(outcome)

    return report


@dataclass
class OneOrbitReport:
    """The steps of the analysis of a map whose vertices form one orbit

    Hypotheses that fail are reported through the flags; the analysis of
    the witness edge is run only when all of them hold."""

    edge: str
    witness: PeriodicPointRecord
    w1: Word
    w2: Word
    distinct_words: bool
    belonging: Dict[str, bool]
    classification: Optional[EdgeClassification] = None
    predictions: List[Prediction] = field(default_factory=list)
    verification: Optional[VerificationReport] = None

    @property
    def all_edges_belong(self) -> bool:
        return all(self.belonging.values())

    def to_dict(self):
        return {
            "edge": self.edge,
            "witness": self.witness.to_dict(),
            "w1": str(self.w1),
            "w2": str(self.w2),
            "distinct_words": self.distinct_words,
            "belonging": dict(self.belonging),
            "all_edges_belong": self.all_edges_belong,
            "classification": None
            if self.classification is None
            else self.classification.to_dict(),
            "predictions": [p.to_dict() for p in self.predictions],
            "verification": None
            if self.verification is None
            else self.verification.to_dict(),
        }


def one_orbit_analysis(
    lm: LiftedVertexMap,
    max_denominator: int = 4,
    period_bound: int = 8,
    max_scale: int = DEFAULT_MAX_SCALE,
    max_path_length: int = DEFAULT_MAX_PATH_LENGTH,
) -> OneOrbitReport:
    """Analyse a map whose vertices form a single periodic orbit

    The witness edge is the first edge (in declaration order) containing an
    interior fixed point on a branch of positive slope.

    Raises:
        HypothesisUnmet: if the vertices do not form a single orbit, if the
            fundamental group has rank less than two, or if no witness edge
            exists
    """
    graph = lm.graph
    if len(orbit(lm, graph.vertices[0])) != len(graph.vertices):
        raise HypothesisUnmet("the vertices do not form a single periodic orbit")

    if graph.rank < 2:
        raise HypothesisUnmet(
            f"the fundamental group has rank {graph.rank}, at least two generators are needed"
        )

    witness = None
    for edge in graph.edges:
        witness = next(
            (
                r
                for r in enumerate_periodic(lm, edge.id, 1, max_path_length)
                if r.kind == PointKind.INTERIOR and r.branch.orientation == Orientation.FORWARD
            ),
            None,
        )
        if witness is not None:
            break

    if witness is None:
        raise HypothesisUnmet("no edge contains an interior fixed point on an expanding branch")

    analysis = analysis_map(lm, witness.edge)
    edge = graph.edge(witness.edge)
    w1, _ = rotation_word(analysis, edge.initial)
    w2, _ = rotation_word(analysis, edge.terminal)

    report = OneOrbitReport(
        edge=edge.id,
        witness=witness,
        w1=w1,
        w2=w2,
        distinct_words=(w1 != w2),
        belonging={e.id: belongs(analysis.labeling, e.id, w1) for e in graph.edges},
    )
    if not report.distinct_words:
        log.info("the endpoints of %s have the same rotation word %s", edge.id, w1)

    if report.distinct_words and report.all_edges_belong:
        report.classification = classify_edge(analysis, edge.id)
        report.predictions = predicted_elements(
            report.classification, max_denominator, max_scale
        )
        report.verification = verify_predictions(
            analysis, edge.id, report.predictions, period_bound, max_path_length
        )
    else:
        log.info("hypotheses for the one-orbit analysis of %s not met", edge.id)

    return report
