"""
Synthesis of a path of any achievable length between two poses.

The strategy is chosen from the pair's classification:

- CCC shortest, or a major first/last arc: twin straights on a major arc
- long straight: a wave on the straight, then twin straights on its semicircle
- far-apart equal-side turn centres: a wave on that CSC word, or below its
  length a pivot family toward it, cut at its first major arc
- pairs with a gap, below l1: a family from the shortest path to the l1 root
- pairs with a gap, above l2: twin straights on the path realizing l2

Anything the case-specific strategy cannot finish falls back to a
composite search over the candidate paths.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, List, Optional, Tuple

import numpy as np
from scipy import optimize

from ..config import (
    BISECTION_MAXITER, FAMILY_GRID, LENGTH_TOL, MEMBERSHIP_SLACK, POSE_TOL,
)
from ..utils.geometry import CurvatureBound, CurvaturePath, OrientedPose, SegmentKind, validate
from ..utils.logging import logger, format_length
from .errors import (
    DubinsPathError, FamilyDiscontinuity, InfeasibleLength, NoParallelTangents,
    NoSolutionFound, NotAStraight, SegmentTooShort, ToleranceNotMet,
)
from .families import (
    ChainFamily, FamilyProbe, families_to_major_arc, gap_family_probes, probe_family,
    select_gap_family,
)
from .feasibility import FeasibilityAnalysis, Membership, analyze
from .path_surgery import (
    HALF_PI, MAX_WAVE_GAIN, full_loop_insert, insert_parallel_extension, major_arc_index,
    wave_chord, wave_deform, wave_gain,
)
from .words import Word


class StrategyTag(Enum):
    """Construction used for an elongated path."""
    PARALLEL_INSERT = 'ParallelInsert'
    WAVE_DEFORM = 'WaveDeform'
    DISK_PUSH = 'DiskPush'
    LOOP_THEN_PARALLEL = 'LoopThenParallel'
    COMPOSITE = 'Composite'


@dataclass(frozen=True)
class ElongationRequest:
    X: OrientedPose
    Y: OrientedPose
    bound: CurvatureBound
    target_length: float
    tol: float = LENGTH_TOL

    def __post_init__(self):
        if not (math.isfinite(self.target_length) and self.target_length > 0):
            raise ValueError(f"Target length must be positive and finite, got {self.target_length}")
        if not self.tol > 0:
            raise ValueError(f"Tolerance must be positive, got {self.tol}")


@dataclass(frozen=True)
class ElongationResult:
    """
    An elongated path with its audit trail.

    ``parameter`` is the family value used: δ for twin straights, α for
    waves, λ for families, None for paths returned unchanged.
    """
    path: CurvaturePath
    strategy: StrategyTag
    base_length: float
    parameter: Optional[float] = None


_RECOVERABLE = (NoParallelTangents, NotAStraight, SegmentTooShort, FamilyDiscontinuity,
                ToleranceNotMet, NoSolutionFound)


def _result(path: CurvaturePath, strategy: StrategyTag, base_length: float,
            parameter: Optional[float] = None) -> ElongationResult:
    return ElongationResult(path.labelled(strategy=strategy.value), strategy, base_length, parameter)


def bisect_family(length_at: Callable[[float], float], target: float, tol: float,
                  lo: float = 0.0, hi: float = 1.0, grid: int = FAMILY_GRID,
                  samples: Optional[Tuple[np.ndarray, np.ndarray]] = None) -> float:
    """
    Find λ in [lo, hi] with length_at(λ) = target.

    The grid brackets the first crossing of the target, then scipy's
    bisection refines it.

    Raises:
        ToleranceNotMet: if no bracket exists or bisection stalls
    """
    if samples is None:
        lams = np.linspace(lo, hi, grid + 1)
        lengths = np.array([length_at(lam) for lam in lams])
    else:
        lams, lengths = samples
    residual = lengths - target

    hits = np.flatnonzero(np.abs(residual) <= tol)
    crossings = np.flatnonzero(np.isfinite(residual[:-1]) & np.isfinite(residual[1:])
                               & (np.sign(residual[:-1]) != np.sign(residual[1:])))
    if hits.size and (not crossings.size or hits[0] <= crossings[0]):
        return float(lams[hits[0]])
    if not crossings.size:
        finite = np.isfinite(lengths)
        closest = float(lengths[finite][np.argmin(np.abs(residual[finite]))]) if finite.any() else None
        raise ToleranceNotMet(target, closest, "target not bracketed by the family")

    i = int(crossings[0])
    root, info = optimize.bisect(lambda lam: length_at(lam) - target, lams[i], lams[i + 1],
                                 xtol=1e-15, maxiter=BISECTION_MAXITER,
                                 full_output=True, disp=False)
    achieved = length_at(root)
    if abs(achieved - target) > tol:
        raise ToleranceNotMet(target, achieved,
                              f"bisection stopped after {info.iterations} iterations")
    return float(root)


def _parallel(base: CurvaturePath, target: float, strategy: StrategyTag) -> ElongationResult:
    base_length = base.length
    delta = max(0.0, 0.5 * (target - base_length))
    if delta == 0:
        return _result(base, strategy, base_length, 0.0)
    return _result(insert_parallel_extension(base, delta), strategy, base_length, delta)


def wave_alpha(extra: float, radius: float) -> float:
    """Half-angle α in [0, π/2] whose wave adds exactly ``extra`` length."""
    if extra <= 0:
        return 0.0
    ceiling = wave_gain(HALF_PI, radius)
    if extra >= ceiling:
        return HALF_PI
    return float(optimize.bisect(lambda a: wave_gain(a, radius) - extra, 0.0, HALF_PI,
                                 xtol=1e-15, maxiter=BISECTION_MAXITER, disp=False))


def _longest_straight(path: CurvaturePath) -> Optional[int]:
    best, best_len = None, -1.0
    for i, seg in enumerate(path.segments):
        if seg.kind is SegmentKind.STRAIGHT and seg.magnitude > best_len:
            best, best_len = i, seg.magnitude
    return best


def _wave(base: CurvaturePath, target: float, tol: float) -> ElongationResult:
    """Elongate along the longest straight of ``base`` (needs at least 4/κ beyond a partial wave)."""
    r = base.bound.radius
    index = _longest_straight(base)
    if index is None:
        raise NotAStraight("Path has no straight segment", -1)
    straight = base.segments[index].magnitude
    base_length = base.length
    extra = target - base_length

    if extra <= MAX_WAVE_GAIN * r:
        alpha = wave_alpha(extra, r)
        if wave_chord(alpha, r) > straight + 1e-9:
            raise SegmentTooShort(f"Straight {straight:.9g} too short for the wave",
                                  available=straight, required=wave_chord(alpha, r))
        path = wave_deform(base, index, alpha)
        # Closed-form α leaves rounding in the length; polish on the actual path
        if abs(path.length - target) > tol and alpha < HALF_PI:
            alpha = bisect_family(lambda a: wave_deform(base, index, a).length, target, tol,
                                  lo=0.0, hi=min(HALF_PI, _max_alpha(straight, r)))
            path = wave_deform(base, index, alpha)
        return _result(path, StrategyTag.WAVE_DEFORM, base_length, alpha)

    if straight < 4.0 * r - 1e-9:
        raise SegmentTooShort(f"Straight {straight:.9g} shorter than 4/kappa",
                              available=straight, required=4.0 * r)
    waved = wave_deform(base, index, HALF_PI)
    result = _parallel(waved, target, StrategyTag.WAVE_DEFORM)
    return ElongationResult(result.path, StrategyTag.WAVE_DEFORM, base_length, HALF_PI)


def _max_alpha(straight: float, radius: float) -> float:
    return math.asin(min(1.0, straight / (4.0 * radius)))


def _from_family(family: ChainFamily, probe: FamilyProbe, target: float, tol: float,
                 base_length: float) -> ElongationResult:
    lam = bisect_family(family.length_at, target, tol, samples=(probe.lams, probe.lengths))
    return _result(family.path_at(lam), StrategyTag.DISK_PUSH, base_length, lam)


def _gap_family(analysis: FeasibilityAnalysis, target: float, tol: float) -> ElongationResult:
    """Pairs with a gap, target in [l_m, l1]."""
    gap = analysis.gap
    l_m = analysis.shortest.length
    if target >= gap.l1 - tol:
        return _result(gap.l1_path, StrategyTag.DISK_PUSH, l_m, 1.0)

    try:
        probe = select_gap_family(analysis)
        return _from_family(probe.family, probe, target, tol, l_m)
    except (FamilyDiscontinuity, ToleranceNotMet) as exc:
        logger.info("Preferred gap family failed (%s); trying the other roots", exc)

    for key, probe in gap_family_probes(analysis):
        if probe.max_length >= target - tol:
            try:
                return _from_family(probe.family, probe, target, tol, l_m)
            except ToleranceNotMet:
                continue
    raise FamilyDiscontinuity("No continuous family from the shortest path covers the target")


def _same_handed_bridge(analysis: FeasibilityAnalysis, word: Word, target: float,
                        tol: float) -> ElongationResult:
    """
    Far-apart equal-side turn centres: wave on that CSC word at or above
    its length; below it, pivot toward the word until a major arc appears,
    then twin straights on that arc.
    """
    bridge_path = analysis.table.path(word.value)
    bridge_length = bridge_path.length
    if target >= bridge_length - tol:
        return _wave(bridge_path, max(target, bridge_length), tol)

    l_m = analysis.shortest.length
    X, Y, k = analysis.X, analysis.Y, analysis.bound
    for family in families_to_major_arc(X, Y, k, analysis.shortest, word):
        probe = probe_family(family, l_m)
        if probe is None:
            continue
        if target > probe.end_length:
            return _parallel(family.path_at(1.0), target, StrategyTag.PARALLEL_INSERT)
        try:
            return _from_family(family, probe, target, tol, l_m)
        except ToleranceNotMet:
            continue
    raise FamilyDiscontinuity(f"No continuous family joins the shortest path to a major arc toward {word.value}")


def _strategies(analysis: FeasibilityAnalysis, target: float,
                tol: float) -> List[Tuple[str, Callable[[], ElongationResult]]]:
    cls = analysis.classification
    shortest_path = analysis.shortest
    plan: List[Tuple[str, Callable[[], ElongationResult]]] = []

    if cls.ccc_shortest:
        plan.append(('major middle arc', lambda: _parallel(shortest_path, target, StrategyTag.PARALLEL_INSERT)))
        return plan

    if cls.in_nabla_O and analysis.feasible_set.gap is not None:
        gap = analysis.gap
        if target <= gap.l1 + tol:
            plan.append(('gap family', lambda: _gap_family(analysis, target, tol)))
        else:
            tag = StrategyTag.LOOP_THEN_PARALLEL if gap.l2_source == 'loop' else StrategyTag.PARALLEL_INSERT
            plan.append((f"l2 path ({gap.l2_source})",
                         lambda: _parallel(gap.l2_path, max(target, gap.l2), tag)))
            plan.append((f"l2 path ({gap.l2_source}) wave",
                         lambda: _wave(gap.l2_path, max(target, gap.l2), tol)))
        return plan

    members = cls.o_memberships
    if Membership.O1 in members or Membership.O2 in members:
        plan.append(('major end arc', lambda: _parallel(shortest_path, target, StrategyTag.PARALLEL_INSERT)))
    if Membership.O3 in members:
        plan.append(('long straight', lambda: _wave(shortest_path, target, tol)))
    if Membership.O4 in members:
        plan.append(('right centres apart', lambda: _same_handed_bridge(analysis, Word.RSR, target, tol)))
    if Membership.O5 in members:
        plan.append(('left centres apart', lambda: _same_handed_bridge(analysis, Word.LSL, target, tol)))
    return plan


def _composite_bases(analysis: FeasibilityAnalysis) -> Iterable[CurvaturePath]:
    yield analysis.shortest
    for key in ('RSR', 'RSL', 'LSR', 'LSL', 'RLR_s', 'RLR_l', 'LRL_s', 'LRL_l'):
        path = analysis.table.path(key)
        if path is not None:
            yield path
    yield full_loop_insert(analysis.shortest)


def _composite(analysis: FeasibilityAnalysis, target: float, tol: float) -> ElongationResult:
    """
    Any candidate path no longer than the target that owns a major arc or a
    straight long enough for the remaining length.
    """
    r = analysis.bound.radius
    for base in sorted(_composite_bases(analysis), key=lambda p: p.length):
        base_length = base.length
        if base_length > target + tol:
            continue
        if major_arc_index(base) is not None:
            return _parallel(base, target, StrategyTag.COMPOSITE)
        index = _longest_straight(base)
        if index is None:
            continue
        straight = base.segments[index].magnitude
        reach = wave_gain(_max_alpha(straight, r), r)
        if straight >= 4.0 * r - MEMBERSHIP_SLACK or target - base_length <= reach:
            try:
                result = _wave(base, target, tol)
            except (SegmentTooShort, ToleranceNotMet):
                continue
            return _result(result.path, StrategyTag.COMPOSITE, base_length, result.parameter)

    raise ToleranceNotMet(target, None, "no composite construction reaches the target")


def _accept(result: ElongationResult, req: ElongationRequest) -> bool:
    report = validate(result.path, req.X, req.Y, POSE_TOL)
    if not report.passed(POSE_TOL):
        logger.info("Rejected %s path: endpoint error %.3g", result.strategy.value, report.max_error)
        return False
    if abs(report.length - req.target_length) > req.tol:
        logger.info("Rejected %s path: length %s for target %s", result.strategy.value,
                    format_length(report.length), format_length(req.target_length))
        return False
    return True


def elongate(req: ElongationRequest) -> ElongationResult:
    """
    Build a validated path of the requested length.

    Raises:
        DegenerateInput: if start and goal coincide
        InfeasibleLength: if the target is below the shortest length or in the gap
        ToleranceNotMet: if no construction reaches the target within tol
    """
    analysis = analyze(req.X, req.Y, req.bound)
    lengths = analysis.feasible_set
    target, tol = req.target_length, req.tol
    if not lengths.contains(target, tol):
        raise InfeasibleLength(target, lengths)

    if abs(target - lengths.l_m) <= tol:
        tag = StrategyTag.DISK_PUSH if analysis.classification.in_nabla_O else StrategyTag.PARALLEL_INSERT
        return _result(analysis.shortest, tag, lengths.l_m, 0.0)
    if lengths.gap is not None and lengths.l2 - tol <= target < lengths.l2:
        target = lengths.l2

    closest = None
    for name, build in _strategies(analysis, target, tol):
        try:
            result = build()
        except _RECOVERABLE as exc:
            logger.info("Strategy '%s' failed for target %s: %s", name, format_length(target), exc)
            continue
        if _accept(result, req):
            logger.debug("Strategy '%s' reached %s", name, format_length(result.path.length))
            return result
        closest = result.path.length

    try:
        result = _composite(analysis, target, tol)
    except DubinsPathError as exc:
        raise ToleranceNotMet(req.target_length, closest, str(exc)) from exc
    if not _accept(result, req):
        raise ToleranceNotMet(req.target_length, result.path.length, "composite path failed validation")
    return result


def elongate_to(req: ElongationRequest) -> CurvaturePath:
    """Path of length ``req.target_length`` (within ``req.tol``), tagged with its strategy."""
    return elongate(req).path
