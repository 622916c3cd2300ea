"""
Utilities module for dubins_elongation: pose and path geometry,
logging, and trace export.
"""

from .geometry import (
    CurvatureBound,
    CurvaturePath,
    OrientedPose,
    PathSegment,
    SegmentKind,
    ValidationReport,
    sample,
    sample_arrays,
    validate,
)
from .trace_export import read_trace_csv, write_trace_csv, write_trace_svg

__all__ = [
    'CurvatureBound',
    'CurvaturePath',
    'OrientedPose',
    'PathSegment',
    'SegmentKind',
    'ValidationReport',
    'sample',
    'sample_arrays',
    'validate',
    'read_trace_csv',
    'write_trace_csv',
    'write_trace_svg',
]
