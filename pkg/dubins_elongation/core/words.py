"""
Closed-form boundary-value solvers for the six Dubins words.

Every path here is built as a chain of turn circles joined by common
tangents, which keeps the construction in centre geometry (atan2 based)
instead of inverse-trigonometric closed forms.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..config import SNAP_EPS, TANGENCY_SLACK
from ..utils.geometry import (
    TWO_PI, CurvatureBound, CurvaturePath, OrientedPose, PathSegment, SegmentKind,
    mod2pi, turn_center,
)
from ..utils.logging import logger, format_length
from .errors import DegenerateInput

L, R, S = SegmentKind.LEFT, SegmentKind.RIGHT, SegmentKind.STRAIGHT

Circle = Tuple[np.ndarray, SegmentKind]


class Word(Enum):
    """Dubins word tags."""
    LSL = 'LSL'
    RSR = 'RSR'
    LSR = 'LSR'
    RSL = 'RSL'
    RLR = 'RLR'
    LRL = 'LRL'

    @property
    def kinds(self) -> Tuple[SegmentKind, SegmentKind, SegmentKind]:
        return tuple(SegmentKind(ch) for ch in self.value)

    @property
    def is_csc(self) -> bool:
        return self.value[1] == 'S'


# Deterministic tie-break order for the shortest path
WORD_ORDER = (Word.LSL, Word.RSR, Word.LSR, Word.RSL, Word.RLR, Word.LRL)

CSC_WORDS = (Word.RSR, Word.RSL, Word.LSR, Word.LSL)
CCC_WORDS = (Word.RLR, Word.LRL)

TABLE_KEYS = ('RSR', 'RSL', 'LSR', 'LSL', 'RLR_s', 'RLR_l', 'LRL_s', 'LRL_l')


def _snap(value: float) -> float:
    return 0.0 if value < SNAP_EPS else value


def _arc(side: SegmentKind, entry: float, exit_: float) -> float:
    if side is L:
        arc = mod2pi(exit_ - entry)
    else:
        arc = mod2pi(entry - exit_)
    if arc < SNAP_EPS or arc > TWO_PI - SNAP_EPS:
        return 0.0
    return arc


def circle_chain_path(X: OrientedPose, Y: OrientedPose, bound: CurvatureBound,
                      circles: Sequence[Circle],
                      touching: Optional[Sequence[bool]] = None,
                      word: Optional[str] = None) -> Optional[CurvaturePath]:
    """
    Build the path that rolls along a chain of turn circles.

    The first circle must be a turn circle of X and the last one a turn
    circle of Y. Consecutive circles are joined by the common tangent
    that keeps the travel direction of both circles: outer tangents for
    equal sides, inner tangents for opposite sides.

    Args:
        X: Start pose
        Y: Goal pose
        bound: Curvature bound
        circles: (centre, side) pairs along the chain
        touching: Per junction, True if the two circles are known to be
            externally tangent; no straight is emitted there
        word: Optional label stored on the path

    Returns:
        The path, or None when an inner tangent does not exist.
    """
    r = bound.radius
    if touching is None:
        touching = [False] * (len(circles) - 1)

    # Coincident equal-side neighbours are the same circle
    chain: List[Circle] = [circles[0]]
    joins: List[bool] = []
    keep_zero_join = len(circles) == 2
    for (centre, side), touch in zip(circles[1:], touching):
        prev_centre, prev_side = chain[-1]
        if (side is prev_side and not keep_zero_join
                and math.hypot(*(centre - prev_centre)) < SNAP_EPS):
            continue
        chain.append((centre, side))
        joins.append(bool(touch))

    headings: List[float] = []
    straights: List[Optional[float]] = []
    for (c1, s1), (c2, s2), touch in zip(chain[:-1], chain[1:], joins):
        dx, dy = c2[0] - c1[0], c2[1] - c1[1]
        dist = math.hypot(dx, dy)
        if s1 is s2:
            if dist < SNAP_EPS:
                headings.append(Y.theta)
                straights.append(0.0)
            else:
                headings.append(math.atan2(dy, dx))
                straights.append(dist)
            continue

        if dist < 2.0 * r - TANGENCY_SLACK:
            return None
        if touch:
            offset = 0.5 * math.pi
            straights.append(None)
        else:
            span = math.sqrt(max(dist * dist - 4.0 * r * r, 0.0))
            offset = math.atan2(2.0 * r, span)
            straights.append(span)
        base = math.atan2(dy, dx)
        headings.append(base + offset if s1 is L else base - offset)

    entries = [X.theta] + headings
    exits = headings + [Y.theta]
    segments: List[PathSegment] = []
    for i, (centre, side) in enumerate(chain):
        segments.append(PathSegment(side, _arc(side, entries[i], exits[i])))
        if i < len(straights) and straights[i] is not None:
            segments.append(PathSegment(S, _snap(straights[i])))

    return CurvaturePath(X, tuple(segments), bound, word=word)


def _require_distinct(X: OrientedPose, Y: OrientedPose):
    if X == Y:
        raise DegenerateInput(f"Start and goal poses coincide: {X.as_tuple()}")


def solve_csc(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, w: Word) -> Optional[CurvaturePath]:
    """
    Solve a CSC word as C_η S_d C_ξ.

    Returns None when the tangent does not exist (inner tangents need the
    turn centres at least 2/κ apart). Equal-side words always exist.
    """
    if not w.is_csc:
        raise ValueError(f"{w.value} is not a CSC word")
    first, _, last = w.kinds
    circles = [(turn_center(X, k, first), first), (turn_center(Y, k, last), last)]
    return circle_chain_path(X, Y, k, circles, touching=[False], word=w.value)


def ccc_middle_centers(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, w: Word) -> List[np.ndarray]:
    """
    Centres of the middle circle of a CCC word.

    The middle circle touches both same-handed outer circles, so its
    centre is an intersection of the two radius-2/κ circles around them.

    Returns [] when the outer centres coincide. Every point 2/κ from the
    shared centre is then a middle centre, so the word has no isolated
    root; the equal-sided CSC word on the shared circle is a single arc
    from X to Y and is never longer than such a CCC path.
    """
    if w.is_csc:
        raise ValueError(f"{w.value} is not a CCC word")
    outer = w.kinds[0]
    r = k.radius
    c1 = turn_center(X, k, outer)
    c3 = turn_center(Y, k, outer)
    delta = c3 - c1
    d = math.hypot(*delta)
    if d < TANGENCY_SLACK or d > 4.0 * r + TANGENCY_SLACK:
        return []

    h = math.sqrt(max(4.0 * r * r - 0.25 * d * d, 0.0))
    mid = 0.5 * (c1 + c3)
    normal = np.array([-delta[1], delta[0]]) / d
    if h <= TANGENCY_SLACK:
        return [mid]
    return [mid + h * normal, mid - h * normal]


def ccc_path(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, w: Word,
             middle: np.ndarray) -> Optional[CurvaturePath]:
    outer, inner, _ = w.kinds
    circles = [(turn_center(X, k, outer), outer), (middle, inner), (turn_center(Y, k, outer), outer)]
    return circle_chain_path(X, Y, k, circles, touching=[True, True], word=w.value)


def solve_ccc_roots(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, w: Word) -> List[CurvaturePath]:
    """
    Enumerate both placements of the middle circle of a CCC word.

    Returns:
        0, 1 or 2 paths sorted by length; entry 0 is the short root.
    """
    roots = []
    for centre in ccc_middle_centers(X, Y, k, w):
        path = ccc_path(X, Y, k, w, centre)
        if path is not None:
            roots.append(path)
    roots.sort(key=lambda p: p.length)
    return roots


@dataclass(frozen=True)
class CandidateTable:
    """
    The eight candidate lengths between two poses.

    ``lengths`` maps every key of TABLE_KEYS to a length or +inf;
    ``paths`` holds the realizing path of each finite entry.
    """
    lengths: Dict[str, float]
    paths: Dict[str, CurvaturePath]

    def length(self, key: str) -> float:
        return self.lengths[key]

    def finite_entries(self) -> Dict[str, float]:
        return {key: value for key, value in self.lengths.items() if math.isfinite(value)}

    def path(self, key: str) -> Optional[CurvaturePath]:
        return self.paths.get(key)


def candidate_table(X: OrientedPose, Y: OrientedPose, k: CurvatureBound) -> CandidateTable:
    """Populate all eight candidate lengths from the CSC and CCC solvers."""
    _require_distinct(X, Y)
    lengths: Dict[str, float] = {}
    paths: Dict[str, CurvaturePath] = {}

    for w in CSC_WORDS:
        path = solve_csc(X, Y, k, w)
        if path is None:
            lengths[w.value] = math.inf
        else:
            lengths[w.value] = path.length
            paths[w.value] = path

    for w in CCC_WORDS:
        roots = solve_ccc_roots(X, Y, k, w)
        if not roots:
            lengths[f"{w.value}_s"] = lengths[f"{w.value}_l"] = math.inf
            continue
        for suffix, path in (('s', roots[0]), ('l', roots[-1])):
            lengths[f"{w.value}_{suffix}"] = path.length
            paths[f"{w.value}_{suffix}"] = path

    return CandidateTable(lengths=lengths, paths=paths)


def table_key(w: Word) -> str:
    """Key of the entry a word contributes to the shortest-path search."""
    return w.value if w.is_csc else f"{w.value}_s"


def select_shortest(table: CandidateTable) -> CurvaturePath:
    """Pick the shortest entry, breaking ties by WORD_ORDER."""
    best_key = None
    best_length = math.inf
    for w in WORD_ORDER:
        key = table_key(w)
        value = table.lengths[key]
        if value < best_length - 1e-12:
            best_key, best_length = key, value

    if best_key is None:
        # Equal-side CSC words always exist, so this only happens on NaN input
        raise DegenerateInput("No Dubins word produced a finite length")
    logger.debug("Shortest word %s length %s", best_key, format_length(best_length))
    return table.paths[best_key]


def shortest(X: OrientedPose, Y: OrientedPose, k: CurvatureBound) -> CurvaturePath:
    """
    Shortest curvature-bounded path between two poses.

    Raises:
        DegenerateInput: if X equals Y exactly
    """
    return select_shortest(candidate_table(X, Y, k))


def word_of(path: CurvaturePath) -> Word:
    """Word tag stored on a solver path."""
    if path.word is None:
        raise ValueError("Path carries no word label")
    return Word(path.word)
