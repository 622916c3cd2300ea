"""Shared fixtures: the three six-vehicle formation cases and random pose pairs."""

import json
import math

import numpy as np
import pytest
from hypothesis import strategies as st

from dubins_elongation.config import get_seed
from dubins_elongation.core.analysis_cache import AnalysisCache
from dubins_elongation.utils.geometry import CurvatureBound, OrientedPose

SQRT3 = math.sqrt(3.0)

# Goal positions of the triangle formation; every goal heading is +x
GOALS = [(SQRT3, 0.0), (0.0, 1.0), (-SQRT3, 2.0), (-SQRT3, 0.0), (-SQRT3, -2.0), (0.0, -1.0)]

STARTS = {
    'A': [(3.5313, -0.8619, 0.5305), (1.2238, 0.9698, 4.8689), (-3.5775, 1.3472, 1.6328),
          (1.6878, 0.9028, 2.5119), (2.9336, 0.0854, 5.4582), (1.1577, -0.0281, 5.1353)],
    'B': [(4.3627, -1.0457, 6.0141), (-2.3376, 0.2700, 0.2919), (2.1806, 3.3248, 5.0283),
          (-0.8038, 3.4410, 0.8915), (-4.5537, -1.3816, 2.6500), (1.5350, -0.2869, 5.7537)],
    'C': [(1.8829, 4.4956, 0.7477), (-0.9264, 0.0596, 3.1313), (-3.1202, 1.1104, 6.0302),
          (-4.4641, 1.4021, 0.5136), (1.6253, -3.9714, 3.9600), (-0.7889, -2.7028, 1.4063)],
}

SHORTEST_LENGTHS = {
    'A': [7.3871, 5.7164, 7.0162, 6.7435, 9.7219, 6.7160],
    'B': [8.5854, 2.4540, 8.6103, 8.4646, 6.3674, 7.0891],
    'C': [8.0845, 5.9104, 7.8796, 3.3402, 6.6030, 7.6161],
}

# (case, 1-based vehicle) -> (l1, l2); every other vehicle has no gap
GAPS = {('B', 2): (2.7219, 8.7279), ('C', 4): (3.6783, 7.8609)}

ARRIVAL_LENGTHS = {'A': 9.7219, 'B': 8.7279, 'C': 8.0845}

TABLE_TOL = 5e-4

UNIT = CurvatureBound(1.0)


def case_pair(case: str, vehicle: int):
    """(X, Y) for a 1-based vehicle number."""
    x, y, theta = STARTS[case][vehicle - 1]
    gx, gy = GOALS[vehicle - 1]
    return OrientedPose(x, y, theta), OrientedPose(gx, gy, 0.0)


def case_problem_dict(case: str) -> dict:
    vehicles = []
    for i, (start, goal) in enumerate(zip(STARTS[case], GOALS), start=1):
        vehicles.append({
            'id': str(i),
            'start': {'x': start[0], 'y': start[1], 'theta': start[2]},
            'goal': {'x': goal[0], 'y': goal[1], 'theta': 0.0},
        })
    return {'kappa': 1.0, 'vehicles': vehicles}


def random_pairs(rng: np.random.Generator, n: int, half_width: float = 5.0):
    """n random (X, Y) pairs with positions in the square and uniform headings."""
    pairs = []
    while len(pairs) < n:
        x, y, gx, gy = rng.uniform(-half_width, half_width, 4)
        t0, t1 = rng.uniform(0.0, 2.0 * math.pi, 2)
        X, Y = OrientedPose(x, y, t0), OrientedPose(gx, gy, t1)
        if X != Y:
            pairs.append((X, Y))
    return pairs


@st.composite
def poses(draw, half_width: float = 5.0):
    coord = st.floats(min_value=-half_width, max_value=half_width, allow_nan=False, allow_infinity=False)
    heading = st.floats(min_value=0.0, max_value=2.0 * math.pi, allow_nan=False, exclude_max=True)
    return OrientedPose(draw(coord), draw(coord), draw(heading))


@st.composite
def pose_pairs(draw, half_width: float = 5.0):
    X = draw(poses(half_width))
    Y = draw(poses(half_width))
    return X, Y


@pytest.fixture(autouse=True)
def fresh_cache():
    AnalysisCache.invalidate()
    yield
    AnalysisCache.invalidate()


@pytest.fixture
def rng():
    return np.random.default_rng(get_seed())


@pytest.fixture
def write_problem(tmp_path):
    """Write a problem dict (or raw text) to a file and return its path."""
    def _write(content, name='problem.json'):
        path = tmp_path / name
        text = content if isinstance(content, str) else json.dumps(content, indent=2)
        path.write_text(text, encoding='utf-8')
        return path
    return _write
