"""
Continuous one-parameter path families between two fixed poses.

A family is a chain of turn circles whose free circles move continuously
with a parameter λ in [0, 1]; the path rolls along the chain, so every
member is a curvature-bounded path from X to Y. Two motions are used:

- Disk push: a free circle pressed against the straight of a CSC path,
  sliding along the perpendicular bisector of the outer centres until it
  touches both outer circles.
- Pivot: a free circle kept touching a turn circle of one endpoint and
  rotated about it, which swaps the turn direction at that endpoint.
  Both endpoints may pivot together.

Lengths along a family are audited on a grid: any wrap of an arc through
a full turn shows up as a jump and the family is rejected.
"""

import math
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np
from scipy import integrate

from ..config import FAMILY_GRID, FAMILY_JUMP_RADII, MAJOR_ARC_MARGIN, ROUTE_GRID, SNAP_EPS
from ..utils.geometry import (
    TWO_PI, CurvatureBound, CurvaturePath, OrientedPose, SegmentKind, mod2pi, turn_center,
)
from ..utils.logging import logger, format_length
from .analysis_cache import AnalysisCache, cache_key
from .errors import FamilyDiscontinuity, NotInNablaO
from .feasibility import FeasibilityAnalysis, analyze
from .words import Circle, Word, ccc_middle_centers, ccc_path, circle_chain_path, word_of

# Family end points must reproduce their target lengths within this
ENDPOINT_MATCH = 1e-6


def _left_normal(vector: np.ndarray) -> np.ndarray:
    return np.array([-vector[1], vector[0]]) / math.hypot(*vector)


def straight_side_normal(side: SegmentKind, direction: np.ndarray) -> np.ndarray:
    """Unit normal pointing from equal-side centres toward their outer tangent."""
    normal = _left_normal(direction)
    return normal if side is SegmentKind.RIGHT else -normal


def pivot_direction(side: SegmentKind, at_goal: bool) -> int:
    """
    Rotation sense of a free centre rolling about a ``side`` circle.

    At the start the free centre follows the arc being added (ccw about a
    left circle); at the goal the arc is added backwards from Y.
    """
    forward = 1 if side is SegmentKind.LEFT else -1
    return -forward if at_goal else forward


def _wrapped(angles: np.ndarray) -> np.ndarray:
    turned = np.mod(angles, TWO_PI)
    return np.where(turned > TWO_PI - 1e-9, 0.0, turned)


@dataclass(frozen=True)
class CircleSweep:
    """A circle centre rotated about a pivot at fixed distance."""
    pivot: np.ndarray
    radius: float
    start_angle: float
    sweep: float
    eased: bool = True

    @classmethod
    def between(cls, pivot: np.ndarray, radius: float, start: np.ndarray, end: np.ndarray,
                direction: int, eased: bool = True) -> 'CircleSweep':
        a0 = math.atan2(start[1] - pivot[1], start[0] - pivot[0])
        a1 = math.atan2(end[1] - pivot[1], end[0] - pivot[0])
        if direction > 0:
            sweep = mod2pi(a1 - a0)
        else:
            sweep = -mod2pi(a0 - a1)
        return cls(pivot, radius, a0, sweep, eased)

    @classmethod
    def full_turn(cls, pivot: np.ndarray, radius: float, start: np.ndarray, direction: int) -> 'CircleSweep':
        a0 = math.atan2(start[1] - pivot[1], start[0] - pivot[0])
        return cls(pivot, radius, a0, math.copysign(TWO_PI, direction), eased=False)

    def point(self, t: float) -> np.ndarray:
        # Easing makes the centre approach its end quadratically, which keeps
        # a tangent that closes at the end linear in λ
        u = t * (2.0 - t) if self.eased else t
        angle = self.start_angle + self.sweep * u
        return self.pivot + self.radius * np.array([math.cos(angle), math.sin(angle)])

    def points(self, t: np.ndarray) -> np.ndarray:
        """Vectorized ``point`` for an array of fractions; coordinates on the last axis."""
        u = t * (2.0 - t) if self.eased else t
        angle = self.start_angle + self.sweep * u
        return self.pivot + self.radius * np.stack([np.cos(angle), np.sin(angle)], axis=-1)


class ChainFamily:
    """Base class for circle-chain families; subclasses provide circles(λ)."""

    touching: Tuple[bool, ...] = ()

    def __init__(self, X: OrientedPose, Y: OrientedPose, bound: CurvatureBound,
                 side: SegmentKind, label: str):
        self.X = X
        self.Y = Y
        self.bound = bound
        self.side = side
        self.label = label
        self.start_circle = turn_center(X, bound, side)
        self.goal_circle = turn_center(Y, bound, side)

    def circles(self, lam: float) -> List[Circle]:
        raise NotImplementedError("Subclasses must implement circles()")

    def path_at(self, lam: float) -> CurvaturePath:
        lam = min(max(float(lam), 0.0), 1.0)
        path = circle_chain_path(self.X, self.Y, self.bound, self.circles(lam),
                                 touching=self.touching)
        if path is None:
            raise FamilyDiscontinuity(f"{self.label}: tangent lost at lambda={lam:.6g}")
        return path.labelled(strategy='DiskPush')

    def length_at(self, lam: float) -> float:
        try:
            return self.path_at(lam).length
        except FamilyDiscontinuity:
            return math.inf

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"


class DiskPushFamily(ChainFamily):
    """
    Press a disk against the straight of an equal-sided CSC path.

    λ = 0 gives the CSC path (the disk touches the straight at its
    midpoint); λ = 1 gives the CCC path whose middle circle touches both
    outer circles on the straight's side.
    """

    touching = (False, False)

    def __init__(self, X: OrientedPose, Y: OrientedPose, bound: CurvatureBound, side: SegmentKind):
        super().__init__(X, Y, bound, side, f"disk-push {side.value}{side.opposite.value}{side.value}")
        r = bound.radius
        delta = self.goal_circle - self.start_circle
        distance = math.hypot(*delta)
        if distance < 1e-9 or distance > 4.0 * r + 1e-9:
            raise ValueError(f"Outer circles {distance:.6g} apart cannot hold a middle circle")
        self.midpoint = 0.5 * (self.start_circle + self.goal_circle)
        self.normal = straight_side_normal(side, delta)
        self.final_offset = math.sqrt(max(4.0 * r * r - 0.25 * distance * distance, 0.0))

    @property
    def end_center(self) -> np.ndarray:
        return self.midpoint + self.final_offset * self.normal

    def circles(self, lam: float) -> List[Circle]:
        r = self.bound.radius
        h = self.final_offset
        # Both tangent lengths then shrink linearly in λ
        offset = math.sqrt(h * h + (1.0 - lam) ** 2 * (4.0 * r * r - h * h))
        middle = self.midpoint + offset * self.normal
        return [(self.start_circle, self.side), (middle, self.side.opposite),
                (self.goal_circle, self.side)]


class PivotFamily(ChainFamily):
    """
    Swap the turn direction at one endpoint by rotating a circle about it.

    The free circle starts as the opposite turn circle of the pivot
    endpoint and rotates about that endpoint's ``side`` circle while
    touching it.
    """

    def __init__(self, X: OrientedPose, Y: OrientedPose, bound: CurvatureBound, side: SegmentKind,
                 pivot_at_goal: bool, end_center: np.ndarray, direction: int):
        where = 'goal' if pivot_at_goal else 'start'
        super().__init__(X, Y, bound, side,
                         f"pivot {side.value} at {where} ({'+' if direction > 0 else '-'})")
        opposite = side.opposite
        if pivot_at_goal:
            pivot, free = self.goal_circle, turn_center(Y, bound, opposite)
            self.touching = (False, True)
        else:
            pivot, free = self.start_circle, turn_center(X, bound, opposite)
            self.touching = (True, False)
        self.sweep = CircleSweep.between(pivot, 2.0 * bound.radius, free, end_center, direction)

    def circles(self, lam: float) -> List[Circle]:
        return [(self.start_circle, self.side), (self.sweep.point(lam), self.side.opposite),
                (self.goal_circle, self.side)]


class DoublePivotFamily(ChainFamily):
    """
    Swap the turn direction at both endpoints together.

    Each free circle starts as the opposite turn circle of its endpoint and
    rolls about that endpoint's ``side`` circle toward its end centre. The
    members read ``side`` arc, two middle arcs joined by a straight, then
    ``side`` arc. ``waypoints`` lists the covered fractions (start, goal)
    of the two sweeps; λ runs along the polyline through them.
    """

    touching = (True, False, True)

    def __init__(self, X: OrientedPose, Y: OrientedPose, bound: CurvatureBound, side: SegmentKind,
                 start_end: np.ndarray, goal_end: np.ndarray,
                 waypoints: Optional[np.ndarray] = None, label: str = 'diagonal'):
        super().__init__(X, Y, bound, side, f"double pivot {side.value} ({label})")
        opposite = side.opposite
        two_r = 2.0 * bound.radius
        self.start_end = start_end
        self.goal_end = goal_end
        self.start_sweep = CircleSweep.between(self.start_circle, two_r, turn_center(X, bound, opposite),
                                               start_end, pivot_direction(side, at_goal=False), eased=False)
        self.goal_sweep = CircleSweep.between(self.goal_circle, two_r, turn_center(Y, bound, opposite),
                                              goal_end, pivot_direction(side, at_goal=True), eased=False)
        if waypoints is None:
            waypoints = np.array([[0.0, 0.0], [1.0, 1.0]])
        self.waypoints = np.asarray(waypoints, dtype=float)
        steps = np.hypot(*np.diff(self.waypoints, axis=0).T)
        self._knots = np.concatenate(([0.0], np.cumsum(steps))) / steps.sum()

    def fractions(self, lam: float) -> Tuple[float, float]:
        return (float(np.interp(lam, self._knots, self.waypoints[:, 0])),
                float(np.interp(lam, self._knots, self.waypoints[:, 1])))

    def circles(self, lam: float) -> List[Circle]:
        start_fraction, goal_fraction = self.fractions(lam)
        opposite = self.side.opposite
        return [(self.start_circle, self.side), (self.start_sweep.point(start_fraction), opposite),
                (self.goal_sweep.point(goal_fraction), opposite), (self.goal_circle, self.side)]

    def wrap_free(self, start_fraction: np.ndarray, goal_fraction: np.ndarray) -> np.ndarray:
        """
        True where the two middle arcs add up to the middle turn.

        Otherwise one of them has wrapped through a full turn. Coincident
        free centres count as wrap free.
        """
        sign = 1.0 if self.side is SegmentKind.LEFT else -1.0
        theta_p = self.X.theta + sign * abs(self.start_sweep.sweep) * start_fraction
        theta_q = self.Y.theta - sign * abs(self.goal_sweep.sweep) * goal_fraction
        delta = self.goal_sweep.points(goal_fraction) - self.start_sweep.points(start_fraction)
        psi = np.arctan2(delta[..., 1], delta[..., 0])
        first = _wrapped(sign * (theta_p - psi))
        second = _wrapped(sign * (psi - theta_q))
        turn = _wrapped(sign * (theta_p - theta_q))
        apart = np.hypot(delta[..., 0], delta[..., 1]) > SNAP_EPS
        return ~apart | (first + second < turn + math.pi)

    def routed(self, n: int = ROUTE_GRID) -> Optional['DoublePivotFamily']:
        """
        The same pivots along a monotone route through wrap-free fractions.

        Grid nodes are joined by unit steps in either fraction or both, and
        a step needs its midpoint wrap free as well. Returns None when the
        grid has no route from (0, 0) to (1, 1).
        """
        fine = np.linspace(0.0, 1.0, 2 * n + 1)
        ok = self.wrap_free(*np.meshgrid(fine, fine, indexing='ij'))
        moves = ((1, 1), (1, 0), (0, 1))

        def step_from(reach: np.ndarray, i: int, j: int) -> Optional[Tuple[int, int]]:
            for di, dj in moves:
                if i >= di and j >= dj and reach[i - di, j - dj] and ok[2 * i - di, 2 * j - dj]:
                    return i - di, j - dj
            return None

        reach = np.zeros((n + 1, n + 1), dtype=bool)
        reach[0, 0] = ok[0, 0]
        for i in range(n + 1):
            for j in range(n + 1):
                if (i or j) and ok[2 * i, 2 * j]:
                    reach[i, j] = step_from(reach, i, j) is not None
        if not reach[n, n]:
            logger.debug("%r: no wrap-free route on a %d grid", self, n)
            return None

        route = [(n, n)]
        while route[-1] != (0, 0):
            route.append(step_from(reach, *route[-1]))
        waypoints = np.array(route[::-1], dtype=float) / n
        return DoublePivotFamily(self.X, self.Y, self.bound, self.side, self.start_end, self.goal_end,
                                 waypoints, label='routed')


class MajorArcFamily(ChainFamily):
    """
    Pivot the mismatched end circles of a CSC path toward ``side`` circles.

    Rolling a free circle toward the equal-sided CSC word grows its own arc
    toward a full turn, so the family is cut at the first member owning an
    arc of more than half a turn. Pivot angles follow an ODE: one end at
    unit rate, or with both ends pivoting, rates that keep both middle arcs
    growing (each rate is the straight plus 2/κ times the sine of the other
    end's middle arc).

    Raises:
        FamilyDiscontinuity: if no arc passes half a turn
    """

    def __init__(self, X: OrientedPose, Y: OrientedPose, bound: CurvatureBound, side: SegmentKind,
                 pivot_start: bool, pivot_goal: bool):
        if not (pivot_start or pivot_goal):
            raise ValueError("At least one endpoint must pivot")
        ends = ' and '.join(name for name, flag in (('start', pivot_start), ('goal', pivot_goal)) if flag)
        super().__init__(X, Y, bound, side, f"major-arc pivot {side.value} at {ends}")
        opposite = side.opposite
        two_r = 2.0 * bound.radius
        self.start_sweep = None
        self.goal_sweep = None
        if pivot_start:
            self.start_sweep = CircleSweep.full_turn(self.start_circle, two_r, turn_center(X, bound, opposite),
                                                     pivot_direction(side, at_goal=False))
        if pivot_goal:
            self.goal_sweep = CircleSweep.full_turn(self.goal_circle, two_r, turn_center(Y, bound, opposite),
                                                    pivot_direction(side, at_goal=True))
        self.touching = (True,) * pivot_start + (False,) + (True,) * pivot_goal
        self._angles, self.tau_end = self._integrate()

    def _chain(self, start_angle: float, goal_angle: float) -> List[Circle]:
        opposite = self.side.opposite
        circles = [(self.start_circle, self.side)]
        if self.start_sweep is not None:
            circles.append((self.start_sweep.point(start_angle / TWO_PI), opposite))
        if self.goal_sweep is not None:
            circles.append((self.goal_sweep.point(goal_angle / TWO_PI), opposite))
        circles.append((self.goal_circle, self.side))
        return circles

    def _member(self, start_angle: float, goal_angle: float) -> Optional[CurvaturePath]:
        return circle_chain_path(self.X, self.Y, self.bound, self._chain(start_angle, goal_angle),
                                 touching=self.touching)

    def _rates(self, tau: float, angles: np.ndarray) -> List[float]:
        if self.start_sweep is None:
            return [0.0, 1.0]
        if self.goal_sweep is None:
            return [1.0, 0.0]
        path = self._member(*angles)
        if path is None or len(path.segments) != 5:
            return [0.5, 0.5]
        _, first, straight, second, _ = (seg.magnitude for seg in path.segments)
        two_r = 2.0 * self.bound.radius
        start_rate = max(straight + two_r * math.sin(second), 0.0)
        goal_rate = max(straight + two_r * math.sin(first), 0.0)
        total = start_rate + goal_rate
        if total <= SNAP_EPS:
            return [0.5, 0.5]
        return [start_rate / total, goal_rate / total]

    def _excess(self, angles: np.ndarray) -> float:
        path = self._member(*angles)
        if path is None:
            return -1.0
        arcs = [seg.magnitude for seg in path.segments
                if seg.kind.is_arc and seg.magnitude < TWO_PI - MAJOR_ARC_MARGIN]
        return max(arcs, default=0.0) - (math.pi + MAJOR_ARC_MARGIN)

    def _integrate(self):
        def passes_half_turn(tau, angles):
            return self._excess(angles)
        passes_half_turn.terminal = True
        passes_half_turn.direction = 1.0

        # Pivot angles add up at unit rate, and an angle beyond π stops the run
        solution = integrate.solve_ivp(self._rates, (0.0, 2.0 * TWO_PI), [0.0, 0.0],
                                       events=passes_half_turn, dense_output=True, max_step=0.05)
        if not solution.t_events[0].size:
            raise FamilyDiscontinuity(f"{self.label}: no arc passed half a turn")
        return solution.sol, float(solution.t_events[0][0])

    def circles(self, lam: float) -> List[Circle]:
        start_angle, goal_angle = self._angles(lam * self.tau_end)
        return self._chain(max(float(start_angle), 0.0), max(float(goal_angle), 0.0))


@dataclass(frozen=True)
class FamilyProbe:
    """A family together with its audited length samples."""
    family: ChainFamily
    lams: np.ndarray
    lengths: np.ndarray

    @property
    def start_length(self) -> float:
        return float(self.lengths[0])

    @property
    def end_length(self) -> float:
        return float(self.lengths[-1])

    @property
    def max_length(self) -> float:
        return float(np.max(self.lengths))


def sample_family_lengths(family: ChainFamily, n: int = FAMILY_GRID) -> Tuple[np.ndarray, np.ndarray]:
    """Lengths of a family on an (n + 1)-point λ grid; +inf where a tangent is lost."""
    lams = np.linspace(0.0, 1.0, n + 1)
    lengths = np.array([family.length_at(lam) for lam in lams])
    return lams, lengths


def probe_family(family: ChainFamily, start_length: float, n: int = FAMILY_GRID) -> Optional[FamilyProbe]:
    """
    Audit a family: it must exist everywhere, start at ``start_length``
    and have no length jump larger than FAMILY_JUMP_RADII turn radii.
    """
    lams, lengths = sample_family_lengths(family, n)
    if not np.all(np.isfinite(lengths)):
        logger.debug("%r rejected: tangent lost on the grid", family)
        return None
    if abs(lengths[0] - start_length) > ENDPOINT_MATCH:
        logger.debug("%r rejected: starts at %s, expected %s", family,
                     format_length(lengths[0]), format_length(start_length))
        return None
    max_jump = float(np.max(np.abs(np.diff(lengths)))) if len(lengths) > 1 else 0.0
    if max_jump > FAMILY_JUMP_RADII * family.bound.radius:
        logger.debug("%r rejected: length jump %.6f", family, max_jump)
        return None
    return FamilyProbe(family, lams, lengths)


def _pivot_families(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, shortest_path: CurvaturePath,
                    side: SegmentKind, start_end: np.ndarray, goal_end: np.ndarray) -> Iterator[ChainFamily]:
    """Families turning the shortest path's circles into ``side`` circles at both ends."""
    first, _, last = word_of(shortest_path).kinds
    if first is side and last is not side:
        for direction in (1, -1):
            yield PivotFamily(X, Y, k, side, pivot_at_goal=True, end_center=goal_end, direction=direction)
    elif last is side and first is not side:
        for direction in (1, -1):
            yield PivotFamily(X, Y, k, side, pivot_at_goal=False, end_center=start_end, direction=direction)
    elif first is not side and last is not side:
        family = DoublePivotFamily(X, Y, k, side, start_end, goal_end)
        yield family
        routed = family.routed()
        if routed is not None:
            yield routed


def families_to_ccc(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, shortest_path: CurvaturePath,
                    word: Word, middle: np.ndarray) -> Iterator[ChainFamily]:
    """Candidate families from a CSC shortest path to the CCC path with the given middle centre."""
    side = word.kinds[0]
    first, _, last = word_of(shortest_path).kinds
    if first is side and last is side:
        try:
            push = DiskPushFamily(X, Y, k, side)
        except ValueError:
            return
        if math.hypot(*(push.end_center - middle)) < 1e-9:
            yield push
        return
    yield from _pivot_families(X, Y, k, shortest_path, side, middle, middle)


def families_to_major_arc(X: OrientedPose, Y: OrientedPose, k: CurvatureBound,
                          shortest_path: CurvaturePath, word: Word) -> Iterator[MajorArcFamily]:
    """
    Pivot families from a CSC shortest path toward the equal-sided CSC word
    ``word``, each ending at its first member with a major arc.
    """
    shortest_word = word_of(shortest_path)
    if not shortest_word.is_csc:
        return
    side = word.kinds[0]
    first, _, last = shortest_word.kinds
    if first is side and last is side:
        return
    try:
        yield MajorArcFamily(X, Y, k, side, pivot_start=first is not side, pivot_goal=last is not side)
    except FamilyDiscontinuity as exc:
        logger.debug("%s", exc)


def _root_targets(analysis: FeasibilityAnalysis) -> List[Tuple[str, float, Word, np.ndarray]]:
    """Short CCC roots as (key, length, word, middle centre), l1 root first."""
    X, Y, k = analysis.X, analysis.Y, analysis.bound
    targets = []
    for key in ('LRL_s', 'RLR_s'):
        length = analysis.table.lengths[key]
        if not math.isfinite(length):
            continue
        word = Word(key[:3])
        for middle in ccc_middle_centers(X, Y, k, word):
            path = ccc_path(X, Y, k, word, middle)
            if path is not None and abs(path.length - length) <= 1e-12 * max(1.0, length):
                targets.append((key, length, word, middle))
                break
    l1_key = analysis.gap.l1_key if analysis.gap is not None else None
    targets.sort(key=lambda t: (t[0] != l1_key, -t[1]))
    return targets


def gap_family_probes(analysis: FeasibilityAnalysis) -> Iterator[Tuple[str, FamilyProbe]]:
    """
    Audited families from the shortest path to the short CCC roots.

    Yields (root key, probe) with families ending at the l1 root first.
    Only families that end at their root are yielded.
    """
    X, Y, k = analysis.X, analysis.Y, analysis.bound
    l_m = analysis.shortest.length
    for key, length, word, middle in _root_targets(analysis):
        for family in families_to_ccc(X, Y, k, analysis.shortest, word, middle):
            probe = probe_family(family, l_m)
            if probe is not None and abs(probe.end_length - length) <= ENDPOINT_MATCH:
                logger.debug("Gap family %r reaches %s (%s)", family, key, format_length(length))
                yield key, probe


_NO_FAMILY = object()


def select_gap_family(analysis: FeasibilityAnalysis) -> FamilyProbe:
    """
    The preferred family joining the shortest path to the l1 root.

    Raises:
        NotInNablaO: if the pair has no gap
        FamilyDiscontinuity: if no candidate family passes the audit
    """
    if not analysis.classification.in_nabla_O or analysis.feasible_set.gap is None:
        raise NotInNablaO(f"Pair is classified {analysis.classification.label}; it has no gap",
                          classification=analysis.classification)

    key = cache_key(analysis.X, analysis.Y, analysis.bound)
    cached = AnalysisCache.get(key, store='family')
    if cached is _NO_FAMILY:
        raise FamilyDiscontinuity("No continuous family reaches the l1 root")
    if cached is not None:
        return cached

    for root_key, probe in gap_family_probes(analysis):
        if root_key == analysis.gap.l1_key:
            AnalysisCache.set(key, probe, store='family')
            return probe
    AnalysisCache.set(key, _NO_FAMILY, store='family')
    raise FamilyDiscontinuity("No continuous family reaches the l1 root")


def disk_push_family(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, lam: float) -> CurvaturePath:
    """
    Member λ of the family from the shortest path (λ = 0) to the CCC root
    of length l1 (λ = 1).

    Raises:
        NotInNablaO: if the pair has no gap
        FamilyDiscontinuity: if every candidate family fails the length audit
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"Family parameter must lie in [0, 1], got {lam}")
    analysis = analyze(X, Y, k)
    probe = select_gap_family(analysis)
    if lam == 0.0:
        return analysis.shortest.labelled(strategy='DiskPush')
    if lam == 1.0:
        return analysis.gap.l1_path.labelled(strategy='DiskPush')
    return probe.family.path_at(lam)
