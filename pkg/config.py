"""
config.py
=========
Numerical constants, defaults and environment overrides shared by every module.

Environment:
- WRIGHTKIT_TERM_BUDGET: maximum number of series terms (default 10000)
- WRIGHTKIT_N_JOBS: parallel workers for audit sweeps (default 1)
"""

import os
import sys

from errors import ConfigError

# =============================================================================
# SERIES SUMMATION
# =============================================================================

TERM_BUDGET = 10_000      # hard cap; exceeding it is a NonConvergenceError
MIN_TERMS = 8             # stopping rule may not fire before k = 8
STOP_STREAK = 3           # consecutive negligible terms required
RATIO_GUARD = 0.5         # |t_{k+1}/t_k| must be below this when stopping
ACCURACY_TARGET = 1e-12    # double sums with estimate > target*max(1,|value|) raise PrecisionLossError
EPS = sys.float_info.epsilon

# =============================================================================
# GAMMA FAMILY
# =============================================================================

GAMMA_OVERFLOW_X = 171.6243769563027   # Γ(x) overflows a double beyond this
X_STAR_REFERENCE = 1.461632144           # abscissa of min Γ, published to 9 decimals
X_STAR_BRACKET = (1.0, 2.0)
X_STAR_XTOL = 1e-12

# =============================================================================
# QUADRATURE
# =============================================================================

MIN_QUADRATURE_NODES = 8
MAX_QUADRATURE_NODES = 4096
DEFAULT_QUAD_TOL = 1e-10
MAX_SUBSTITUTION_DENOMINATOR = 8   # rational α = m/n with n, m up to this use t = v^m

# =============================================================================
# ORACLE
# =============================================================================

ORACLE_DPS = 40           # decimal digits for the extended-precision oracle
ORACLE_TAIL = 1e-30       # oracle stops once a term drops below this

# =============================================================================
# PROBES
# =============================================================================

PROBE_DEFAULTS = {
    "h": 0.01,
    "max_order": 6,
    "grid_n": 25,
}
PROBE_NOISE_FACTOR = 64.0   # slack multiple of ε·|f| per difference order

# =============================================================================
# AUDIT
# =============================================================================

AUDIT_SLACK = 1e-12       # margins in (-slack, 0) are roundoff, not violations
IDENTITY_TOL = 1e-10

X_STAR_APPROX = 1.4616321449683622

DEFAULT_GRID = {
    "alpha": [0.5, 1.0, 1.5, 2.0, round(X_STAR_APPROX + 0.1, 12)],
    "beta_offset": [0.5, 1.0, 2.0],
    "gamma": [0.5, 1.0],
    "sigma_offset": [0.5, 1.0, 2.0, 3.0],
    "z": [0.01, 0.1, 0.25, 0.5, 0.75, 0.9],
    "z_extra": [1.5, 3.0, 5.0],        # only for claims stated for all z > 0
    "z_negative": [-0.9, -0.5],        # only for the two-sided Fox-Wright bounds
}

# Triangular grid of 15 (x, y) pairs with x <= y and x + y < 1
_PAIR_AXIS = [0.05, 0.15, 0.25, 0.35, 0.45]
SUPERADD_PAIRS = [(x, y) for i, x in enumerate(_PAIR_AXIS) for y in _PAIR_AXIS[i:]]

# =============================================================================
# CLI
# =============================================================================

EXIT_OK = 0
EXIT_EVAL_ERROR = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_VIOLATION = 4

FLOAT_FORMAT = "%.17g"


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def term_budget() -> int:
    """Series term budget, honoring WRIGHTKIT_TERM_BUDGET."""
    return _int_from_env("WRIGHTKIT_TERM_BUDGET", TERM_BUDGET, MIN_TERMS + STOP_STREAK)


def n_jobs() -> int:
    """Default sweep parallelism, honoring WRIGHTKIT_N_JOBS."""
    return _int_from_env("WRIGHTKIT_N_JOBS", 1, 1)
