"""
Length-increasing edits of a path that keep both endpoints fixed.

- insert_parallel_extension: twin straights at two opposite tangents of a major arc
- wave_deform: an arc triple replacing part of a straight
- full_loop_insert: a full turn at the start pose
"""

import math
from typing import List, Optional

from ..config import SNAP_EPS
from ..utils.geometry import TWO_PI, CurvaturePath, PathSegment, SegmentKind
from .errors import NoParallelTangents, NotAStraight, SegmentTooShort

HALF_PI = 0.5 * math.pi
# Largest elongation a single wave can add, in turn radii
MAX_WAVE_GAIN = 2.0 * math.pi - 4.0


def major_arc_index(path: CurvaturePath) -> Optional[int]:
    """Index of the first arc of at least π radians, or None."""
    for i, seg in enumerate(path.segments):
        if seg.kind.is_arc and seg.magnitude >= math.pi - SNAP_EPS:
            return i
    return None


def insert_parallel_extension(path: CurvaturePath, delta: float) -> CurvaturePath:
    """
    Lengthen a path by 2δ using a pair of opposite tangents.

    The first arc φ ≥ π is split as a, π, φ-a-π with a = (φ-π)/2. The two
    split points have opposite headings; inserting a straight of length δ
    at each translates the semicircle between them by δ and back, so the
    end pose is unchanged.

    Raises:
        NoParallelTangents: if the path has no arc of at least π radians
    """
    if delta < 0 or not math.isfinite(delta):
        raise ValueError(f"Extension delta must be finite and >= 0, got {delta}")
    index = major_arc_index(path)
    if index is None:
        raise NoParallelTangents(f"No arc >= pi in path {path.describe()}")
    if delta == 0:
        return path

    arc = path.segments[index]
    lead = max(0.0, 0.5 * (arc.magnitude - math.pi))
    tail = max(0.0, arc.magnitude - lead - math.pi)
    replacement = [
        PathSegment(arc.kind, lead),
        PathSegment(SegmentKind.STRAIGHT, delta),
        PathSegment(arc.kind, math.pi),
        PathSegment(SegmentKind.STRAIGHT, delta),
        PathSegment(arc.kind, tail),
    ]
    segments = list(path.segments[:index]) + replacement + list(path.segments[index + 1:])
    return path.with_segments(segments, word=path.word)


def wave_chord(alpha: float, radius: float) -> float:
    """Straight length consumed by a wave of half-angle α."""
    return 4.0 * radius * math.sin(alpha)


def wave_gain(alpha: float, radius: float) -> float:
    """Length added by a wave of half-angle α: 4r(α - sin α)."""
    return 4.0 * radius * (alpha - math.sin(alpha))


def wave_deform(path: CurvaturePath, straight_index: int, alpha: float,
                side: SegmentKind = SegmentKind.LEFT, offset: float = 0.0) -> CurvaturePath:
    """
    Replace a chord of a straight by the arc triple [α, 2α opposite, α].

    Args:
        path: Path to edit
        straight_index: Index of a straight segment
        alpha: Half-angle of the wave in [0, π/2]; 0 leaves the path unchanged
        side: Turn direction of the outer arcs of the triple
        offset: Distance along the straight before the wave starts

    Raises:
        NotAStraight: if the index does not address a straight
        SegmentTooShort: if the straight cannot hold the chord 4 sin(α)/κ
    """
    if not 0.0 <= alpha <= HALF_PI + SNAP_EPS:
        raise ValueError(f"Wave angle must lie in [0, pi/2], got {alpha}")
    alpha = min(alpha, HALF_PI)
    if not side.is_arc:
        raise ValueError("Wave side must be LEFT or RIGHT")
    if not 0 <= straight_index < len(path.segments):
        raise NotAStraight(f"No segment at index {straight_index}", straight_index)
    seg = path.segments[straight_index]
    if seg.kind is not SegmentKind.STRAIGHT:
        raise NotAStraight(f"Segment {straight_index} is {seg.kind.value}, not a straight",
                           straight_index)
    if alpha == 0:
        return path

    chord = wave_chord(alpha, path.bound.radius)
    available = seg.magnitude - offset
    if offset < 0 or available < chord - 1e-9:
        raise SegmentTooShort(
            f"Straight of length {seg.magnitude:.9g} cannot hold a wave chord of {chord:.9g}",
            available=seg.magnitude, required=chord + max(offset, 0.0))

    replacement: List[PathSegment] = []
    if offset > 0:
        replacement.append(PathSegment(SegmentKind.STRAIGHT, offset))
    replacement += [
        PathSegment(side, alpha),
        PathSegment(side.opposite, 2.0 * alpha),
        PathSegment(side, alpha),
        PathSegment(SegmentKind.STRAIGHT, max(0.0, available - chord)),
    ]
    segments = list(path.segments[:straight_index]) + replacement + list(path.segments[straight_index + 1:])
    return path.with_segments(segments, word=path.word)


def full_loop_insert(path: CurvaturePath) -> CurvaturePath:
    """
    Add a full turn at the start pose.

    The loop turns the same way as the first arc (merged into it), or
    left when the path starts with a straight or is empty.
    """
    segments = list(path.segments)
    if segments and segments[0].kind.is_arc:
        first = segments[0]
        segments[0] = PathSegment(first.kind, first.magnitude + TWO_PI)
    else:
        segments.insert(0, PathSegment(SegmentKind.LEFT, TWO_PI))
    return path.with_segments(segments, word=path.word)
