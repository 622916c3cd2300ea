"""
Core module for dubins_elongation.

Shortest-path solvers, feasible length sets, elongation strategies,
the brute-force oracle and fleet planning.
"""

from .errors import (
    DubinsPathError,
    DegenerateInput,
    NotInNablaO,
    NoParallelTangents,
    NotAStraight,
    SegmentTooShort,
    FamilyDiscontinuity,
    InfeasibleLength,
    ToleranceNotMet,
    NoSolutionFound,
    ProblemFileError,
)
from .analysis_cache import AnalysisCache
from .words import CandidateTable, Word, candidate_table, shortest, solve_ccc_roots, solve_csc
from .feasibility import (
    Classification,
    FeasibilityAnalysis,
    FeasibleLengthSet,
    GapBounds,
    Membership,
    analyze,
    classify,
    contains,
    feasible_set,
    gap_bounds,
    gap_details,
)
from .path_surgery import full_loop_insert, insert_parallel_extension, wave_deform
from .families import (
    DiskPushFamily, DoublePivotFamily, MajorArcFamily, PivotFamily, disk_push_family,
    sample_family_lengths,
)
from .elongation import ElongationRequest, ElongationResult, StrategyTag, elongate, elongate_to
from .oracle import OracleConfig, oracle_exists_length, oracle_shortest, oracle_witness
from .fleet import ArrivalRow, FleetPlan, FleetProblem, Vehicle, VehiclePlan, arrival_report, plan_formation

__all__ = [
    'DubinsPathError',
    'DegenerateInput',
    'NotInNablaO',
    'NoParallelTangents',
    'NotAStraight',
    'SegmentTooShort',
    'FamilyDiscontinuity',
    'InfeasibleLength',
    'ToleranceNotMet',
    'NoSolutionFound',
    'ProblemFileError',
    'AnalysisCache',
    'CandidateTable',
    'Word',
    'candidate_table',
    'shortest',
    'solve_ccc_roots',
    'solve_csc',
    'Classification',
    'FeasibilityAnalysis',
    'FeasibleLengthSet',
    'GapBounds',
    'Membership',
    'analyze',
    'classify',
    'contains',
    'feasible_set',
    'gap_bounds',
    'gap_details',
    'full_loop_insert',
    'insert_parallel_extension',
    'wave_deform',
    'DiskPushFamily',
    'DoublePivotFamily',
    'MajorArcFamily',
    'PivotFamily',
    'disk_push_family',
    'sample_family_lengths',
    'ElongationRequest',
    'ElongationResult',
    'StrategyTag',
    'elongate',
    'elongate_to',
    'OracleConfig',
    'oracle_exists_length',
    'oracle_shortest',
    'oracle_witness',
    'ArrivalRow',
    'FleetPlan',
    'FleetProblem',
    'Vehicle',
    'VehiclePlan',
    'arrival_report',
    'plan_formation',
]
