"""
gamma_core.py
=============
Gamma-family primitives used by every other module.

Gamma, log-gamma, digamma, Beta, the Pochhammer symbol and the abscissa x* of the
minimum of Gamma on (0, inf). Values come from scipy.special (Cephes); this
module adds the domain policy: poles raise PoleError instead of returning inf,
overflow raises GammaOverflowError, and ratios go through log-gamma differences
so that Γ(αk+β) for large k never overflows.

Overflow threshold: Γ(x) is not representable as a double for
x > 171.6243769563027 (config.GAMMA_OVERFLOW_X).
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from scipy import optimize, special

import config
from errors import ConvergenceError, DomainError, GammaOverflowError, PoleError


@dataclass(frozen=True)
class GammaMinConstant:
    """Minimizer of Γ on (0, inf) with its cross-checks."""
    x_star: float
    gamma_at_x_star: float
    digamma_at_x_star: float
    golden_section_x: float


# =============================================================================
# ARGUMENT CHECKS
# =============================================================================

def is_pole(x: float) -> bool:
    """True for 0, -1, -2, ..."""
    return x <= 0 and float(x).is_integer()


def _check_finite(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x}")
    return x


def _check_positive(x: float, name: str = "x") -> float:
    x = _check_finite(x, name)
    if x <= 0:
        raise DomainError(f"{name} must be > 0, got {x}")
    return x


# =============================================================================
# PRIMITIVES
# =============================================================================

def gamma(x: float) -> float:
    """
    Gamma function for real, non-pole arguments.

    Raises:
        PoleError: x is 0, -1, -2, ...
        GammaOverflowError: x > 171.6243769563027
    """
    x = _check_finite(x)
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at x={x}")
    if x > config.GAMMA_OVERFLOW_X:
        raise GammaOverflowError(
            f"Gamma({x}) overflows (threshold {config.GAMMA_OVERFLOW_X})")
    return float(special.gamma(x))


def log_gamma(x: float) -> float:
    """ln Γ(x) for x > 0."""
    x = _check_positive(x)
    return float(special.gammaln(x))


def digamma(x: float) -> float:
    """ψ(x) = Γ'(x)/Γ(x) for x > 0."""
    x = _check_positive(x)
    return float(special.psi(x))


def beta(x: float, y: float) -> float:
    """B(x, y) = Γ(x)Γ(y)/Γ(x+y) through the symmetric log-gamma form."""
    x = _check_positive(x, "x")
    y = _check_positive(y, "y")
    return math.exp(special.gammaln(x) + special.gammaln(y) - special.gammaln(x + y))


def pochhammer(tau: float, n: int) -> float:
    """Rising factorial (τ)_n = τ(τ+1)...(τ+n-1), with (τ)_0 = 1."""
    tau = _check_finite(tau, "tau")
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a non-negative integer, got {n}")
    result = 1.0
    for k in range(int(n)):
        factor = tau + k
        if is_pole(factor):
            raise PoleError(f"(tau)_n factor tau+{k}={factor} is a pole of Γ(tau+n)/Γ(tau)")
        result *= factor
    return result


def log_abs_gamma(x: float) -> Tuple[float, float]:
    """
    Return (ln|Γ(x)|, sign Γ(x)) for any finite non-pole x, negative included.
    """
    x = _check_finite(x)
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at x={x}")
    return float(special.gammaln(x)), float(special.gammasgn(x))


def log_abs_rgamma(x: float) -> Tuple[float, float]:
    """
    Return (ln|1/Γ(x)|, sign) with the convention 1/Γ(pole) = 0, i.e. (-inf, 0).
    """
    x = _check_finite(x)
    if is_pole(x):
        return -math.inf, 0.0
    return -float(special.gammaln(x)), float(special.gammasgn(x))


def gamma_ratio(a: float, b: float) -> float:
    """Γ(a)/Γ(b) via log-gamma differences; 0 when b is a pole."""
    la, sa = log_abs_gamma(a)
    lb, sb = log_abs_rgamma(b)
    if sb == 0.0:
        return 0.0
    return sa * sb * math.exp(la + lb)


def rgamma(x: float) -> float:
    """1/Γ(x), zero at the poles."""
    return float(special.rgamma(_check_finite(x)))


# =============================================================================
# GAMMA MINIMUM
# =============================================================================

@lru_cache(maxsize=1)
def find_gamma_min() -> GammaMinConstant:
    """
    Locate x* = argmin Γ on (0, inf) as the root of digamma on (1, 2).

    Bisection on ψ gives x*; a golden-section minimization of Γ itself is kept as
    an independent cross-check.

    Raises:
        ConvergenceError: bracketing or either solver failed.
    """
    lo, hi = config.X_STAR_BRACKET
    if not special.psi(lo) < 0 < special.psi(hi):
        raise ConvergenceError(f"digamma does not change sign on ({lo}, {hi})")
    try:
        x_star, info = optimize.bisect(special.psi, lo, hi, xtol=config.X_STAR_XTOL,
                                       full_output=True)
    except (ValueError, RuntimeError) as e:
        raise ConvergenceError(f"digamma root bisection failed: {e}")
    if not info.converged:
        raise ConvergenceError(f"digamma root bisection did not converge: {info.flag}")

    golden = optimize.minimize_scalar(special.gamma, bracket=(lo, 1.5, hi), method="golden",
                                      tol=1e-10)
    if not getattr(golden, "success", True) or abs(golden.x - x_star) > 1e-6:
        raise ConvergenceError(
            f"golden-section minimum {golden.x} disagrees with digamma root {x_star}")

    return GammaMinConstant(
        x_star=float(x_star),
        gamma_at_x_star=float(special.gamma(x_star)),
        digamma_at_x_star=float(special.psi(x_star)),
        golden_section_x=float(golden.x),
    )


def x_star() -> float:
    """Shortcut for find_gamma_min().x_star."""
    return find_gamma_min().x_star


__all__ = [
    "GammaMinConstant", "is_pole", "gamma", "log_gamma", "digamma", "beta", "pochhammer",
    "log_abs_gamma", "log_abs_rgamma", "gamma_ratio", "rgamma", "find_gamma_min", "x_star",
]
