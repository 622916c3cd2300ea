"""
Brute-force boundary-value search used to audit the analytic solvers.

The oracle knows nothing about tangent constructions. For every word of
up to ``families`` segments it scans the free segment magnitudes
(a regular grid for two free parameters, scrambled Sobol points beyond
that), closes the last segment in closed form, and refines the most
promising seeds with scipy's bounded least squares.
"""

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import ndimage, optimize
from scipy.stats import qmc

from ..config import get_seed
from ..utils.geometry import (
    TWO_PI, CurvatureBound, CurvaturePath, OrientedPose, PathSegment, SegmentKind, turn_center,
)
from ..utils.logging import logger, format_length
from .errors import DegenerateInput, NoSolutionFound

LETTERS = ('L', 'R', 'S')


@dataclass(frozen=True)
class OracleConfig:
    """
    Search settings.

    Args:
        grid_resolution: Grid step in radians for arcs (turn radii for straights)
        families: Maximum number of segments searched (>= 3)
        refine_iters: Function-evaluation cap per least-squares refinement
        seeds_per_word: Seeds refined per word
        arc_span: Largest arc searched by existence queries, in radians
        tol: Largest boundary (and length) residual accepted as a solution
        sobol_exponent: log2 of the Sobol sample count for 4+ segment words
        seed: Scrambling seed for Sobol points
    """
    grid_resolution: float = 0.05
    families: int = 5
    refine_iters: int = 200
    seeds_per_word: int = 6
    arc_span: float = 2.0 * TWO_PI
    tol: float = 1e-7
    sobol_exponent: int = 11
    seed: int = field(default_factory=get_seed)

    def __post_init__(self):
        if not self.grid_resolution > 0:
            raise ValueError(f"grid_resolution must be positive, got {self.grid_resolution}")
        if self.families < 3:
            raise ValueError(f"families must be at least 3, got {self.families}")
        if self.refine_iters < 1 or self.seeds_per_word < 1:
            raise ValueError("refine_iters and seeds_per_word must be positive")
        if not self.tol > 0 or not self.arc_span > 0:
            raise ValueError("tol and arc_span must be positive")


def search_words(max_segments: int) -> Iterator[str]:
    """Words over {L, R, S} with no two equal neighbours, shortest first."""
    for n in range(3, max_segments + 1):
        for letters in itertools.product(LETTERS, repeat=n):
            if all(a != b for a, b in zip(letters, letters[1:])):
                yield ''.join(letters)


def _advance(x, y, th, letter: str, mag, r: float):
    """Vectorized pose update for one segment."""
    if letter == 'S':
        return x + mag * np.cos(th), y + mag * np.sin(th), th
    sigma = 1.0 if letter == 'L' else -1.0
    t = th + sigma * mag
    return (x - sigma * r * np.sin(th) + sigma * r * np.sin(t),
            y + sigma * r * np.cos(th) - sigma * r * np.cos(t),
            t)


def _close_last(x, y, th, letter: str, Y: OrientedPose, k: CurvatureBound):
    """
    Magnitude of a final segment of type ``letter`` and the residual left.

    A final arc must start on Y's turn circle of the same side; a final
    straight must already carry Y's heading and point at Y.
    """
    r = k.radius
    if letter == 'S':
        dx, dy = Y.x - x, Y.y - y
        along = dx * np.cos(th) + dy * np.sin(th)
        across = -dx * np.sin(th) + dy * np.cos(th)
        turn = np.arctan2(np.sin(th - Y.theta), np.cos(th - Y.theta))
        magnitude = np.maximum(along, 0.0)
        residual = np.sqrt(across ** 2 + np.minimum(along, 0.0) ** 2 + (r * turn) ** 2)
        return magnitude, residual

    side = SegmentKind(letter)
    cy_x, cy_y = turn_center(Y, k, side)
    sigma = side.sign
    cx = x - sigma * r * np.sin(th)
    cyy = y + sigma * r * np.cos(th)
    residual = np.hypot(cx - cy_x, cyy - cy_y)
    magnitude = np.mod(sigma * (Y.theta - th), TWO_PI)
    return magnitude, residual


def _bounds(word: str, k: CurvatureBound, arc_max: float, straight_max: float) -> Tuple[np.ndarray, np.ndarray]:
    upper = np.array([arc_max if letter != 'S' else straight_max for letter in word])
    return np.zeros(len(word)), upper


def _length(word: str, params: np.ndarray, k: CurvatureBound):
    return sum((p * k.radius if letter != 'S' else p) for letter, p in zip(word, params))


def _residual_vector(params: np.ndarray, word: str, X: OrientedPose, Y: OrientedPose,
                     k: CurvatureBound, target: Optional[float]) -> np.ndarray:
    x, y, th = X.x, X.y, X.theta
    for letter, mag in zip(word, params):
        x, y, th = _advance(x, y, th, letter, mag, k.radius)
    r = k.radius
    res = [x - Y.x, y - Y.y, r * (math.cos(th) - math.cos(Y.theta)), r * (math.sin(th) - math.sin(Y.theta))]
    if target is not None:
        res.append(_length(word, params, k) - target)
    return np.array(res)


def _refine(word: str, seed_params: np.ndarray, X: OrientedPose, Y: OrientedPose, k: CurvatureBound,
            target: Optional[float], lower: np.ndarray, upper: np.ndarray,
            cfg: OracleConfig) -> Optional[np.ndarray]:
    x0 = np.clip(seed_params, lower, upper)
    try:
        fit = optimize.least_squares(_residual_vector, x0, args=(word, X, Y, k, target),
                                     bounds=(lower, upper), method='trf',
                                     xtol=1e-15, ftol=1e-15, gtol=1e-15,
                                     max_nfev=cfg.refine_iters)
    except ValueError as exc:
        logger.debug("Refinement of %s failed: %s", word, exc, exc_info=True)
        return None
    if np.max(np.abs(fit.fun)) <= cfg.tol:
        return np.clip(fit.x, lower, upper)
    return None


def _axis(letter: str, k: CurvatureBound, arc_max: float, straight_max: float, res: float) -> np.ndarray:
    if letter == 'S':
        return np.arange(0.0, straight_max + res * k.radius, res * k.radius)
    return np.arange(0.0, arc_max, res)


def _grid_seeds(word: str, X: OrientedPose, Y: OrientedPose, k: CurvatureBound,
                arc_max: float, straight_max: float, target: Optional[float],
                cfg: OracleConfig) -> List[np.ndarray]:
    """Local minima of the closing residual over a grid of the first two magnitudes."""
    a = _axis(word[0], k, arc_max, straight_max, cfg.grid_resolution)
    b = _axis(word[1], k, arc_max, straight_max, cfg.grid_resolution)
    pa, pb = np.meshgrid(a, b, indexing='ij')
    x, y, th = _advance(np.full_like(pa, X.x), np.full_like(pa, X.y), np.full_like(pa, X.theta),
                        word[0], pa, k.radius)
    x, y, th = _advance(x, y, th, word[1], pb, k.radius)
    pc, residual = _close_last(x, y, th, word[2], Y, k)
    if target is not None:
        total = _length(word, (pa, pb, pc), k)
        residual = np.hypot(residual, total - target)

    minima = (residual == ndimage.minimum_filter(residual, size=3, mode='nearest'))
    idx = np.argwhere(minima)
    order = np.argsort(residual[minima])[:cfg.seeds_per_word]
    return [np.array([pa[tuple(i)], pb[tuple(i)], pc[tuple(i)]]) for i in idx[order]]


def _sobol_seeds(word: str, X: OrientedPose, Y: OrientedPose, k: CurvatureBound,
                 arc_max: float, straight_max: float, target: Optional[float],
                 cfg: OracleConfig) -> List[np.ndarray]:
    """Best-residual Sobol points over all but the last magnitude."""
    free = word[:-1]
    sampler = qmc.Sobol(d=len(free), scramble=True, seed=cfg.seed)
    unit = sampler.random_base2(m=cfg.sobol_exponent)
    upper = np.array([arc_max if letter != 'S' else straight_max for letter in free])
    points = unit * upper

    n = points.shape[0]
    x, y, th = np.full(n, X.x), np.full(n, X.y), np.full(n, X.theta)
    for j, letter in enumerate(free):
        x, y, th = _advance(x, y, th, letter, points[:, j], k.radius)
    last, residual = _close_last(x, y, th, word[-1], Y, k)
    params = np.column_stack([points, last])
    if target is not None:
        total = _length(word, params.T, k)
        residual = np.hypot(residual, total - target)
    order = np.argsort(residual)[:cfg.seeds_per_word]
    return [params[i] for i in order]


def _search(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, target: Optional[float],
            cfg: OracleConfig, first_hit: bool) -> Optional[Tuple[float, str, np.ndarray]]:
    if X == Y:
        raise DegenerateInput(f"Start and goal poses coincide: {X.as_tuple()}")
    r = k.radius
    distance = math.hypot(Y.x - X.x, Y.y - X.y)
    if target is None:
        max_segments = 3
        arc_max = TWO_PI
        straight_max = distance + 4.0 * r
    else:
        max_segments = cfg.families
        arc_max = min(cfg.arc_span, target / r)
        straight_max = target

    best: Optional[Tuple[float, str, np.ndarray]] = None
    for word in search_words(max_segments):
        lower, upper = _bounds(word, k, arc_max if target is not None else TWO_PI, straight_max)
        if len(word) == 3:
            seeds = _grid_seeds(word, X, Y, k, arc_max, straight_max, target, cfg)
        else:
            seeds = _sobol_seeds(word, X, Y, k, arc_max, straight_max, target, cfg)
        for seed_params in seeds:
            solution = _refine(word, seed_params, X, Y, k, target, lower, upper, cfg)
            if solution is None:
                continue
            length = _length(word, solution, k)
            if best is None or length < best[0]:
                best = (length, word, solution)
            if first_hit:
                return best
    return best


def _to_path(X: OrientedPose, k: CurvatureBound, word: str, params: Sequence[float]) -> CurvaturePath:
    segments = [PathSegment(SegmentKind(letter), float(p)) for letter, p in zip(word, params)]
    return CurvaturePath(X, tuple(segments), k, word=word)


def oracle_shortest(X: OrientedPose, Y: OrientedPose, k: CurvatureBound,
                    cfg: Optional[OracleConfig] = None) -> float:
    """
    Shortest length over all three-segment words, found by brute force.

    Raises:
        NoSolutionFound: if no seed converged (resolution too coarse)
    """
    cfg = cfg or OracleConfig()
    best = _search(X, Y, k, None, cfg, first_hit=False)
    if best is None:
        raise NoSolutionFound(f"No path found at grid resolution {cfg.grid_resolution}")
    logger.debug("Oracle shortest %s via %s", format_length(best[0]), best[1])
    return float(best[0])


def oracle_exists_length(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, s: float,
                         cfg: Optional[OracleConfig] = None) -> bool:
    """
    Search words of up to ``cfg.families`` segments for a path of length s.

    A False result is evidence only: it means no seed converged.
    """
    if not s > 0:
        raise ValueError(f"Target length must be positive, got {s}")
    return oracle_witness(X, Y, k, s, cfg) is not None


def oracle_witness(X: OrientedPose, Y: OrientedPose, k: CurvatureBound, s: Optional[float] = None,
                   cfg: Optional[OracleConfig] = None) -> Optional[CurvaturePath]:
    """
    The path the oracle accepted: the shortest one when ``s`` is None,
    otherwise the first one found with length s.
    """
    cfg = cfg or OracleConfig()
    found = _search(X, Y, k, s, cfg, first_hit=s is not None)
    if found is None:
        return None
    length, word, params = found
    return _to_path(X, k, word, params)
