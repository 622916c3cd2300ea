"""
Numerical defaults for the dubins_elongation package.

All tolerances used by the solvers live here so that call sites can take
them as explicit parameters while sharing one set of library-wide defaults.
"""

import os

from .utils.logging import logger

# Endpoint (position and heading) tolerance for validated paths
POSE_TOL = 1e-9

# Target-length tolerance for elongation
LENGTH_TOL = 1e-9

# Arc and straight magnitudes below this are snapped to zero
SNAP_EPS = 1e-12

# Slack applied when deciding whether a tangent construction exists
TANGENCY_SLACK = 1e-9

# Slack applied toward membership in the O1-O5 sets
MEMBERSHIP_SLACK = 1e-9

# Gaps narrower than this are treated as closed
GAP_MIN_WIDTH = 1e-9

# Bisection iteration cap for one-parameter families
BISECTION_MAXITER = 200

# Number of samples used to bracket and audit a path family
FAMILY_GRID = 128

# Largest length jump allowed between neighbouring family samples, in turn radii
FAMILY_JUMP_RADII = 3.0

# Cells per side of the sweep-fraction grid searched for a wrap-free pivot route
ROUTE_GRID = 32

# A pivot family toward a CSC word stops once an arc exceeds π by this much
MAJOR_ARC_MARGIN = 1e-3

# Seed for randomized sweeps when DUBINS_SEED is not set
DEFAULT_SEED = 42

SEED_ENV_VAR = "DUBINS_SEED"



def get_seed() -> int:
    """Return the seed for randomized sweeps.

    Reads ``DUBINS_SEED`` from the environment and falls back to
    ``DEFAULT_SEED`` when it is unset or not an integer.
    """
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        logger.warning("Ignoring %s=%r (not an integer), using seed %d",
                       SEED_ENV_VAR, raw, DEFAULT_SEED)
        return DEFAULT_SEED
