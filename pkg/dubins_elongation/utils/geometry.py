"""
Planar pose arithmetic and symbolic path representation.

Paths are stored as ordered lists of arc and straight segments with a
fixed turn radius, so the curvature bound holds by construction and
validation reduces to endpoint checks.

Key Features:
- Immutable pose, bound, segment and path value types
- Closed-form segment propagation about the left/right turn centres
- Vectorized sampling of a path at a fixed arclength step
- Endpoint validation reports
"""

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

TWO_PI = 2.0 * math.pi


def mod2pi(angle: float) -> float:
    """Wrap an angle into [0, 2π)."""
    wrapped = math.fmod(angle, TWO_PI)
    if wrapped < 0.0:
        wrapped += TWO_PI
    if wrapped >= TWO_PI:
        wrapped = 0.0
    return wrapped


def heading_error(a: float, b: float) -> float:
    """Absolute difference between two headings, in [0, π]."""
    return abs(math.atan2(math.sin(a - b), math.cos(a - b)))


@dataclass(frozen=True)
class OrientedPose:
    """A planar position plus a heading measured counterclockwise from +x."""
    x: float
    y: float
    theta: float = 0.0

    def __post_init__(self):
        for name in ('x', 'y', 'theta'):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"Pose component {name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        object.__setattr__(self, 'theta', mod2pi(self.theta))

    @property
    def position(self) -> np.ndarray:
        return np.array([self.x, self.y])

    @property
    def tangent(self) -> np.ndarray:
        return np.array([math.cos(self.theta), math.sin(self.theta)])

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x, self.y, self.theta)


@dataclass(frozen=True)
class CurvatureBound:
    """Maximum curvature κ; the minimum turn radius is 1/κ."""
    kappa: float

    def __post_init__(self):
        kappa = float(self.kappa)
        if not math.isfinite(kappa) or kappa <= 0:
            raise ValueError(f"kappa must be a positive finite number, got {self.kappa}")
        object.__setattr__(self, 'kappa', kappa)

    @property
    def radius(self) -> float:
        return 1.0 / self.kappa


class SegmentKind(Enum):
    """Segment type; arcs turn with radius exactly 1/κ."""
    LEFT = 'L'
    RIGHT = 'R'
    STRAIGHT = 'S'

    @property
    def is_arc(self) -> bool:
        return self is not SegmentKind.STRAIGHT

    @property
    def sign(self) -> int:
        """+1 for counterclockwise turns, -1 for clockwise, 0 for straights."""
        return {SegmentKind.LEFT: 1, SegmentKind.RIGHT: -1, SegmentKind.STRAIGHT: 0}[self]

    @property
    def opposite(self) -> 'SegmentKind':
        if self is SegmentKind.LEFT:
            return SegmentKind.RIGHT
        if self is SegmentKind.RIGHT:
            return SegmentKind.LEFT
        return self

    @classmethod
    def from_letter(cls, letter: str) -> 'SegmentKind':
        return cls(letter.upper())


@dataclass(frozen=True)
class PathSegment:
    """An arc (magnitude in radians) or a straight (magnitude in length units)."""
    kind: SegmentKind
    magnitude: float

    def __post_init__(self):
        magnitude = float(self.magnitude)
        if not math.isfinite(magnitude) or magnitude < 0:
            raise ValueError(f"Segment magnitude must be finite and >= 0, got {self.magnitude}")
        object.__setattr__(self, 'magnitude', magnitude)

    def length(self, bound: CurvatureBound) -> float:
        if self.kind.is_arc:
            return self.magnitude / bound.kappa
        return self.magnitude

    def __str__(self) -> str:
        return f"{self.kind.value}{self.magnitude:.6g}"


@dataclass(frozen=True)
class CurvaturePath:
    """Start pose plus an ordered segment list under a curvature bound.

    ``word`` and ``strategy`` are audit labels and do not take part in
    equality.
    """
    start: OrientedPose
    segments: Tuple[PathSegment, ...]
    bound: CurvatureBound
    word: Optional[str] = field(default=None, compare=False)
    strategy: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'segments', tuple(self.segments))

    @property
    def length(self) -> float:
        return path_length(self)

    @property
    def end(self) -> 'OrientedPose':
        return end_pose(self)

    @property
    def pattern(self) -> str:
        """Letters of the non-degenerate segments, e.g. 'S' for a pure straight."""
        return ''.join(seg.kind.value for seg in self.segments if seg.magnitude > 0)

    def with_segments(self, segments: Sequence[PathSegment], **labels) -> 'CurvaturePath':
        return replace(self, segments=tuple(segments), word=labels.get('word'),
                       strategy=labels.get('strategy'))

    def labelled(self, **labels) -> 'CurvaturePath':
        return replace(self, **labels)

    def describe(self) -> str:
        return ' '.join(str(seg) for seg in self.segments) or '(empty)'


@dataclass(frozen=True)
class ValidationReport:
    """Endpoint agreement of a path with the requested boundary poses."""
    endpoint_position_error: float
    endpoint_heading_error: float
    curvature_ok: bool
    length: float

    def passed(self, tol: float) -> bool:
        return (self.curvature_ok
                and self.endpoint_position_error <= tol
                and self.endpoint_heading_error <= tol)

    @property
    def max_error(self) -> float:
        return max(self.endpoint_position_error, self.endpoint_heading_error)


def turn_centers(p: OrientedPose, k: CurvatureBound) -> Tuple[np.ndarray, np.ndarray]:
    """
    Compute the right and left turn-circle centres of a pose.

    Args:
        p: Oriented pose
        k: Curvature bound (radius 1/κ)

    Returns:
        Tuple (right_center, left_center), each a length-2 array at
        distance exactly 1/κ from p, perpendicular to the heading.
    """
    r = k.radius
    s, c = math.sin(p.theta), math.cos(p.theta)
    right = np.array([p.x + r * s, p.y - r * c])
    left = np.array([p.x - r * s, p.y + r * c])
    return right, left


def turn_center(p: OrientedPose, k: CurvatureBound, side: SegmentKind) -> np.ndarray:
    right, left = turn_centers(p, k)
    return left if side is SegmentKind.LEFT else right


def propagate(p: OrientedPose, seg: PathSegment, k: CurvatureBound) -> OrientedPose:
    """
    Pose reached after traversing a segment from ``p``.

    Straights translate along the heading; arcs rotate about the matching
    turn centre by the segment's radians.
    """
    m = seg.magnitude
    if seg.kind is SegmentKind.STRAIGHT:
        return OrientedPose(p.x + m * math.cos(p.theta), p.y + m * math.sin(p.theta), p.theta)

    r = k.radius
    sigma = seg.kind.sign
    cx = p.x - sigma * r * math.sin(p.theta)
    cy = p.y + sigma * r * math.cos(p.theta)
    t = p.theta + sigma * m
    return OrientedPose(cx + sigma * r * math.sin(t), cy - sigma * r * math.cos(t), t)


def end_pose(path: CurvaturePath) -> OrientedPose:
    pose = path.start
    for seg in path.segments:
        pose = propagate(pose, seg, path.bound)
    return pose


def path_length(path: CurvaturePath) -> float:
    return float(sum(seg.length(path.bound) for seg in path.segments))


def segment_start_poses(path: CurvaturePath) -> List[OrientedPose]:
    """Pose at the start of every segment, in order."""
    poses = []
    pose = path.start
    for seg in path.segments:
        poses.append(pose)
        pose = propagate(pose, seg, path.bound)
    return poses


def sample_arrays(path: CurvaturePath, step: float) -> Dict[str, np.ndarray]:
    """
    Sample a path at a fixed arclength step (vectorized).

    Args:
        path: Path to sample
        step: Arclength spacing, > 0

    Returns:
        Dict of equally sized arrays: 'arclength', 'x', 'y', 'theta',
        'segment_index'. The final sample sits exactly at the path length.
        An empty path yields one sample at its start with index -1.
    """
    if not step > 0:
        raise ValueError(f"Sampling step must be positive, got {step}")

    total = path_length(path)
    count = int(math.floor(total / step + 1e-12))
    arclengths = step * np.arange(count + 1, dtype=float)
    if total - arclengths[-1] > 1e-12:
        arclengths = np.append(arclengths, total)
    else:
        arclengths[-1] = total

    if not path.segments:
        n = len(arclengths)
        return {
            'arclength': arclengths,
            'x': np.full(n, path.start.x),
            'y': np.full(n, path.start.y),
            'theta': np.full(n, path.start.theta),
            'segment_index': np.full(n, -1, dtype=int),
        }

    bound = path.bound
    seg_lengths = np.array([seg.length(bound) for seg in path.segments])
    cumulative = np.concatenate([[0.0], np.cumsum(seg_lengths)])
    starts = segment_start_poses(path)
    x0 = np.array([p.x for p in starts])
    y0 = np.array([p.y for p in starts])
    th0 = np.array([p.theta for p in starts])
    sigma = np.array([seg.kind.sign for seg in path.segments], dtype=float)

    idx = np.searchsorted(cumulative[1:], arclengths, side='left')
    idx = np.clip(idx, 0, len(path.segments) - 1)

    ds = np.clip(arclengths - cumulative[idx], 0.0, seg_lengths[idx])
    sg = sigma[idx]
    th = th0[idx]
    px, py = x0[idx], y0[idx]

    r = bound.radius
    phi = ds * bound.kappa
    t_arc = th + sg * phi
    arc_x = px - sg * r * np.sin(th) + sg * r * np.sin(t_arc)
    arc_y = py + sg * r * np.cos(th) - sg * r * np.cos(t_arc)

    straight = sg == 0
    x = np.where(straight, px + ds * np.cos(th), arc_x)
    y = np.where(straight, py + ds * np.sin(th), arc_y)
    theta = np.mod(np.where(straight, th, t_arc), TWO_PI)

    return {
        'arclength': arclengths,
        'x': x,
        'y': y,
        'theta': theta,
        'segment_index': idx.astype(int),
    }


def sample(path: CurvaturePath, step: float) -> List[Tuple[float, OrientedPose, int]]:
    """Sample a path; returns (arclength, pose, segment_index) tuples."""
    arrays = sample_arrays(path, step)
    return [
        (float(s), OrientedPose(float(x), float(y), float(t)), int(i))
        for s, x, y, t, i in zip(arrays['arclength'], arrays['x'], arrays['y'],
                                 arrays['theta'], arrays['segment_index'])
    ]


def validate(path: CurvaturePath, X: OrientedPose, Y: OrientedPose, tol: float) -> ValidationReport:
    """
    Check a path against its boundary poses.

    The reported position/heading errors are the worst of the start
    mismatch against X and the end mismatch against Y. Curvature is
    structural; ``curvature_ok`` only asserts non-negative finite
    magnitudes.
    """
    if not tol > 0:
        raise ValueError(f"Validation tolerance must be positive, got {tol}")

    end = end_pose(path)
    start = path.start
    position_error = max(math.hypot(start.x - X.x, start.y - X.y),
                         math.hypot(end.x - Y.x, end.y - Y.y))
    heading = max(heading_error(start.theta, X.theta), heading_error(end.theta, Y.theta))
    curvature_ok = all(math.isfinite(seg.magnitude) and seg.magnitude >= 0 for seg in path.segments)
    return ValidationReport(
        endpoint_position_error=position_error,
        endpoint_heading_error=heading,
        curvature_ok=curvature_ok,
        length=path_length(path),
    )
