"""
dubins_elongation

Curvature-bounded (Dubins) paths between oriented points in the plane:
shortest paths, the exact set of achievable path lengths, synthesis of a
path of any achievable length, and minimum-time simultaneous arrival for
a fleet of vehicles.
"""

from .utils.logging import logger, set_debug_mode
from .utils.geometry import (
    CurvatureBound,
    CurvaturePath,
    OrientedPose,
    PathSegment,
    SegmentKind,
    ValidationReport,
    end_pose,
    path_length,
    sample,
    validate,
)
from .core import (
    ElongationRequest,
    ElongationResult,
    FeasibleLengthSet,
    FleetPlan,
    FleetProblem,
    StrategyTag,
    Vehicle,
    Word,
    analyze,
    arrival_report,
    candidate_table,
    classify,
    elongate,
    elongate_to,
    feasible_set,
    gap_bounds,
    plan_formation,
    shortest,
)

__version__ = "0.1.0"

__all__ = [
    'logger',
    'set_debug_mode',
    'CurvatureBound',
    'CurvaturePath',
    'OrientedPose',
    'PathSegment',
    'SegmentKind',
    'ValidationReport',
    'end_pose',
    'path_length',
    'sample',
    'validate',
    'ElongationRequest',
    'ElongationResult',
    'FeasibleLengthSet',
    'FleetPlan',
    'FleetProblem',
    'StrategyTag',
    'Vehicle',
    'Word',
    'analyze',
    'arrival_report',
    'candidate_table',
    'classify',
    'elongate',
    'elongate_to',
    'feasible_set',
    'gap_bounds',
    'plan_formation',
    'shortest',
]
