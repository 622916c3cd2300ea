"""
Minimum-time simultaneous arrival for a fleet of vehicles.

Every vehicle flies at the same unit speed, so a common arrival time is a
common path length. The earliest one is the smallest length contained in
every vehicle's feasible length set; it is always one of the sets'
breakpoints, so the search is a sorted sweep with no numeric solver.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..config import LENGTH_TOL, POSE_TOL
from ..utils.geometry import CurvatureBound, CurvaturePath, OrientedPose, validate
from ..utils.logging import logger, format_length
from .elongation import ElongationRequest, StrategyTag, elongate
from .errors import DegenerateInput
from .feasibility import FeasibleLengthSet, feasible_set

MAX_WORKERS = 8


@dataclass(frozen=True)
class Vehicle:
    id: str
    start: OrientedPose
    goal: OrientedPose

    def __post_init__(self):
        if self.start == self.goal:
            raise DegenerateInput(f"Vehicle {self.id}: start and goal coincide at {self.start.as_tuple()}")


@dataclass(frozen=True)
class FleetProblem:
    bound: CurvatureBound
    vehicles: Tuple[Vehicle, ...]

    def __post_init__(self):
        object.__setattr__(self, 'vehicles', tuple(self.vehicles))
        if not self.vehicles:
            raise ValueError("A fleet problem needs at least one vehicle")
        ids = [v.id for v in self.vehicles]
        if len(set(ids)) != len(ids):
            raise ValueError(f"Vehicle ids must be unique, got {ids}")


@dataclass(frozen=True)
class VehiclePlan:
    id: str
    start: OrientedPose
    goal: OrientedPose
    feasible_set: FeasibleLengthSet
    path: CurvaturePath
    strategy: StrategyTag
    base_length: float


@dataclass(frozen=True)
class FleetPlan:
    t_m: float
    vehicles: Tuple[VehiclePlan, ...]

    def vehicle(self, vehicle_id: str) -> Optional[VehiclePlan]:
        for plan in self.vehicles:
            if plan.id == vehicle_id:
                return plan
        return None


@dataclass(frozen=True)
class ArrivalRow:
    id: str
    length: float
    max_endpoint_error: float


def id_sort_key(vehicle_id: str) -> Tuple[int, float, str]:
    """Numeric ids sort numerically ahead of the rest, which sort as text."""
    try:
        return (0, float(vehicle_id), vehicle_id)
    except ValueError:
        return (1, 0.0, vehicle_id)


def earliest_common_length(sets: Sequence[FeasibleLengthSet]) -> float:
    """
    Smallest length contained in every set.

    The intersection always contains [max breakpoint, ∞), so the sweep
    ends at the latest at the largest breakpoint.
    """
    if not sets:
        raise ValueError("At least one feasible length set is required")
    floor = max(s.l_m for s in sets)
    candidates = sorted({b for s in sets for b in s.breakpoints() if b >= floor})
    for value in candidates:
        if all(s.contains(value) for s in sets):
            return value
    # Unreachable for well-formed sets
    raise ValueError("Feasible length sets have an empty intersection")


def _analyze_vehicle(v: Vehicle, bound: CurvatureBound) -> FeasibleLengthSet:
    return feasible_set(v.start, v.goal, bound)


def _plan_vehicle(v: Vehicle, bound: CurvatureBound, lengths: FeasibleLengthSet,
                  t_m: float, tol: float) -> VehiclePlan:
    result = elongate(ElongationRequest(v.start, v.goal, bound, t_m, tol))
    logger.debug("Vehicle %s: %s from %s", v.id, result.strategy.value, format_length(result.base_length))
    return VehiclePlan(v.id, v.start, v.goal, lengths, result.path, result.strategy, result.base_length)


def plan_formation(problem: FleetProblem, tol: float = LENGTH_TOL,
                   max_workers: int = MAX_WORKERS) -> FleetPlan:
    """
    Plan paths of one common, minimal length for every vehicle.

    Args:
        problem: Bound and vehicles
        tol: Length tolerance for every elongated path
        max_workers: Thread pool size for the per-vehicle work

    Returns:
        FleetPlan with vehicles ordered by id

    Raises:
        ToleranceNotMet: if a vehicle's path cannot reach the common length
    """
    vehicles = sorted(problem.vehicles, key=lambda v: id_sort_key(v.id))
    workers = max(1, min(max_workers, len(vehicles)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        sets = list(pool.map(lambda v: _analyze_vehicle(v, problem.bound), vehicles))
        t_m = earliest_common_length(sets)
        logger.debug("Common arrival length %s for %d vehicles", format_length(t_m), len(vehicles))
        plans = list(pool.map(lambda pair: _plan_vehicle(pair[0], problem.bound, pair[1], t_m, tol),
                              zip(vehicles, sets)))
    return FleetPlan(t_m=t_m, vehicles=tuple(plans))


def arrival_report(plan: FleetPlan) -> List[ArrivalRow]:
    """Per-vehicle path length and worst endpoint error."""
    rows = []
    for v in plan.vehicles:
        report = validate(v.path, v.start, v.goal, POSE_TOL)
        rows.append(ArrivalRow(v.id, report.length, report.max_error))
    return rows


def length_spread(rows: Sequence[ArrivalRow]) -> float:
    if not rows:
        return 0.0
    lengths = [row.length for row in rows]
    return max(lengths) - min(lengths)


def dense_intersection_minimum(sets: Sequence[FeasibleLengthSet], step: float = 1e-4,
                               span: Optional[float] = None) -> float:
    """
    Grid scan for the intersection minimum, used to audit the breakpoint sweep.

    Scans from the largest shortest length over ``span`` (default 2π plus
    the widest gap); returns inf if nothing on the grid is contained.
    """
    if not step > 0:
        raise ValueError(f"step must be positive, got {step}")
    floor = max(s.l_m for s in sets)
    if span is None:
        span = 2.0 * math.pi + max((s.l2 - s.l1 for s in sets if s.gap), default=0.0)
    n = int(math.ceil(span / step)) + 1
    for i in range(n):
        value = floor + i * step
        if all(s.contains(value) for s in sets):
            return value
    return math.inf
