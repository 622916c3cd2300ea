"""
Classification of pose pairs and their exact feasible length sets.

A pair either admits every length from the shortest one upward, or (for
pairs with a CSC shortest path outside O1-O5) every length except an
open gap (l1, l2) between the short CCC roots and the cheapest
alternative path.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List, Optional, Tuple

from ..config import GAP_MIN_WIDTH, MEMBERSHIP_SLACK
from ..utils.geometry import CurvatureBound, CurvaturePath, OrientedPose, turn_centers
from ..utils.logging import logger, format_length
from .analysis_cache import AnalysisCache, cache_key
from .errors import DegenerateInput, NotInNablaO
from .path_surgery import full_loop_insert
from .words import CandidateTable, Word, candidate_table, select_shortest, word_of


class Membership(Enum):
    """Sets whose members have no length gap."""
    O1 = 'O1'  # first arc of the shortest path is major
    O2 = 'O2'  # last arc of the shortest path is major
    O3 = 'O3'  # straight of the shortest path is at least 4/κ
    O4 = 'O4'  # right turn centres at least 4/κ apart
    O5 = 'O5'  # left turn centres at least 4/κ apart


@dataclass(frozen=True)
class Classification:
    shortest_word: Word
    o_memberships: FrozenSet[Membership]
    in_nabla_O: bool
    ccc_shortest: bool

    @property
    def label(self) -> str:
        if self.ccc_shortest:
            return 'CCC'
        if self.in_nabla_O:
            return 'nabla_O'
        return ','.join(m.value for m in sorted(self.o_memberships, key=lambda m: m.value))


@dataclass(frozen=True)
class GapBounds:
    """
    Gap endpoints and the paths realizing them.

    ``l2_source`` is one of 'loop', 'LRL_l', 'RLR_l', 'RSR', 'RSL', 'LSR', 'LSL'.
    """
    l1: float
    l2: float
    l1_key: str
    l1_path: CurvaturePath
    l2_source: str
    l2_path: CurvaturePath

    @property
    def width(self) -> float:
        return self.l2 - self.l1


@dataclass(frozen=True)
class FeasibleLengthSet:
    """[l_m, ∞) or [l_m, l1] ∪ [l2, ∞)."""
    l_m: float
    gap: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if self.gap is not None:
            l1, l2 = self.gap
            if not self.l_m <= l1 < l2:
                raise ValueError(f"Gap ({l1}, {l2}) inconsistent with shortest length {self.l_m}")

    @property
    def l1(self) -> Optional[float]:
        return self.gap[0] if self.gap else None

    @property
    def l2(self) -> Optional[float]:
        return self.gap[1] if self.gap else None

    def contains(self, s: float, tol: float = 0.0) -> bool:
        if s < self.l_m - tol:
            return False
        if self.gap is None:
            return True
        l1, l2 = self.gap
        return not (l1 + tol < s < l2 - tol)

    def intervals(self) -> List[Tuple[float, float]]:
        if self.gap is None:
            return [(self.l_m, math.inf)]
        return [(self.l_m, self.gap[0]), (self.gap[1], math.inf)]

    def breakpoints(self) -> List[float]:
        return [self.l_m] + (list(self.gap) if self.gap else [])

    def describe(self) -> str:
        parts = []
        for lo, hi in self.intervals():
            if math.isinf(hi):
                parts.append(f"[{lo:.12g}, +inf)")
            else:
                parts.append(f"[{lo:.12g}, {hi:.12g}]")
        return ' U '.join(parts)


@dataclass(frozen=True)
class FeasibilityAnalysis:
    """Everything known about one (X, Y, κ) triple."""
    X: OrientedPose
    Y: OrientedPose
    bound: CurvatureBound
    table: CandidateTable
    shortest: CurvaturePath
    classification: Classification
    gap: Optional[GapBounds]
    feasible_set: FeasibleLengthSet


def _classify(X: OrientedPose, Y: OrientedPose, k: CurvatureBound,
              shortest_path: CurvaturePath) -> Classification:
    word = word_of(shortest_path)
    if not word.is_csc:
        return Classification(word, frozenset(), in_nabla_O=False, ccc_shortest=True)

    r = k.radius
    first, straight, last = shortest_path.segments
    members = set()
    if first.magnitude >= math.pi - MEMBERSHIP_SLACK:
        members.add(Membership.O1)
    if last.magnitude >= math.pi - MEMBERSHIP_SLACK:
        members.add(Membership.O2)
    if straight.magnitude >= 4.0 * r - MEMBERSHIP_SLACK:
        members.add(Membership.O3)

    right_x, left_x = turn_centers(X, k)
    right_y, left_y = turn_centers(Y, k)
    if math.hypot(*(right_y - right_x)) >= 4.0 * r - MEMBERSHIP_SLACK:
        members.add(Membership.O4)
    if math.hypot(*(left_y - left_x)) >= 4.0 * r - MEMBERSHIP_SLACK:
        members.add(Membership.O5)

    return Classification(word, frozenset(members), in_nabla_O=not members, ccc_shortest=False)


# Tie order for the realizing candidate of l2
_L2_ORDER = ('loop', 'LRL_l', 'RLR_l', 'RSR', 'RSL', 'LSR', 'LSL')


def _gap(table: CandidateTable, shortest_path: CurvaturePath, bound: CurvatureBound) -> Optional[GapBounds]:
    l_m = shortest_path.length
    short_roots = [(table.lengths[key], key) for key in ('LRL_s', 'RLR_s')
                   if math.isfinite(table.lengths[key])]
    if not short_roots:
        logger.debug("No short CCC root exists; no gap")
        return None
    l1, l1_key = max(short_roots)

    loop_path = full_loop_insert(shortest_path)
    candidates = {'loop': (l_m + 2.0 * math.pi * bound.radius, loop_path)}
    for key in ('LRL_l', 'RLR_l'):
        if math.isfinite(table.lengths[key]):
            candidates[key] = (table.lengths[key], table.paths[key])
    for key in ('RSR', 'RSL', 'LSR', 'LSL'):
        value = table.lengths[key]
        # The shortest path itself (and CSC words tying with it) realizes l_m, not l2
        if math.isfinite(value) and abs(value - l_m) > GAP_MIN_WIDTH:
            candidates[key] = (value, table.paths[key])

    l2_source = None
    l2 = math.inf
    for key in _L2_ORDER:
        if key in candidates and candidates[key][0] < l2:
            l2_source, l2 = key, candidates[key][0]

    return GapBounds(l1=l1, l2=l2, l1_key=l1_key, l1_path=table.paths[l1_key],
                     l2_source=l2_source, l2_path=candidates[l2_source][1])


def analyze(X: OrientedPose, Y: OrientedPose, k: CurvatureBound) -> FeasibilityAnalysis:
    """
    Compute (or fetch from cache) the full analysis of a pose pair.

    Raises:
        DegenerateInput: if X equals Y exactly
    """
    key = cache_key(X, Y, k)
    cached = AnalysisCache.get(key)
    if cached is not None:
        return cached

    if X == Y:
        raise DegenerateInput(f"Start and goal poses coincide: {X.as_tuple()}")

    table = candidate_table(X, Y, k)
    shortest_path = select_shortest(table)
    classification = _classify(X, Y, k, shortest_path)
    l_m = shortest_path.length

    gap = None
    set_gap = None
    if classification.in_nabla_O:
        gap = _gap(table, shortest_path, k)
        if gap is not None and gap.width > GAP_MIN_WIDTH and gap.l1 >= l_m:
            set_gap = (gap.l1, gap.l2)
        elif gap is not None:
            logger.debug("Gap (%s, %s) collapsed; treating lengths as unbounded",
                         format_length(gap.l1), format_length(gap.l2))

    analysis = FeasibilityAnalysis(
        X=X, Y=Y, bound=k, table=table, shortest=shortest_path,
        classification=classification, gap=gap,
        feasible_set=FeasibleLengthSet(l_m=l_m, gap=set_gap),
    )
    logger.debug("Pair %s -> %s: %s, feasible %s", X.as_tuple(), Y.as_tuple(),
                 classification.label, analysis.feasible_set.describe())
    AnalysisCache.set(key, analysis)
    return analysis


def classify(X: OrientedPose, Y: OrientedPose, k: CurvatureBound) -> Classification:
    """Classify a pair into O1-O5, the complement set, or CCC-shortest."""
    return analyze(X, Y, k).classification


def gap_details(X: OrientedPose, Y: OrientedPose, k: CurvatureBound) -> GapBounds:
    """
    Gap endpoints plus the paths realizing them.

    Raises:
        NotInNablaO: if the pair has an O1-O5 membership or a CCC shortest
            path, or its gap collapsed (the feasible set then has no gap)
    """
    analysis = analyze(X, Y, k)
    if not analysis.classification.in_nabla_O:
        raise NotInNablaO(f"Pair is classified {analysis.classification.label}; it has no gap",
                          classification=analysis.classification)
    if analysis.gap is None:
        raise NotInNablaO("Pair has no short CCC root; it has no gap",
                          classification=analysis.classification)
    if analysis.feasible_set.gap is None:
        raise NotInNablaO(f"Gap ({format_length(analysis.gap.l1)}, {format_length(analysis.gap.l2)}) "
                          "collapsed; every length from l_m is feasible",
                          classification=analysis.classification)
    return analysis.gap


def gap_bounds(X: OrientedPose, Y: OrientedPose, k: CurvatureBound) -> Tuple[float, float]:
    """
    (l1, l2) for a pair whose feasible set has a gap; always equal to
    ``feasible_set(X, Y, k).gap``.
    """
    gap = gap_details(X, Y, k)
    return gap.l1, gap.l2


def feasible_set(X: OrientedPose, Y: OrientedPose, k: CurvatureBound) -> FeasibleLengthSet:
    return analyze(X, Y, k).feasible_set


def contains(length_set: FeasibleLengthSet, s: float) -> bool:
    """Membership with closed endpoints l_m, l1 and l2."""
    return length_set.contains(s)
