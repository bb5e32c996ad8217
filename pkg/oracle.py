"""
oracle.py
=========
Extended-precision reference sums for tests and acceptance validation.

The defining series are summed in mpmath at config.ORACLE_DPS significant digits
(plus guard digits growing with |z| to absorb cancellation at negative
arguments) until a term drops below config.ORACLE_TAIL relative to the partial
sum. Reciprocal Gamma uses mpmath.rgamma, which is zero at the poles; pole
policy is enforced by the caller (series_eval) before the oracle is reached.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import mpmath

import config
from errors import NonConvergenceError, PoleError


@dataclass(frozen=True)
class OracleResult:
    value: mpmath.mpf
    tail_bound: float
    terms: int


def _guard_digits(z: float) -> int:
    # cancellation at -|z| loses about log10(e^|z|) digits
    return int(math.ceil(0.45 * abs(z))) + 5


def _sum(term: Callable[[int], mpmath.mpf], last_index: Optional[int] = None) -> OracleResult:
    """Sum term(0) + term(1) + ... inside the caller's working precision."""
    budget = config.term_budget()
    tail_tol = mpmath.mpf(config.ORACLE_TAIL)
    total = mpmath.mpf(0)
    last_a = mpmath.mpf(0)
    last_k = -1
    ratio = mpmath.inf
    streak = 0
    for k in range(budget):
        t = term(k)
        total += t
        a = abs(t)
        if last_index is not None and k >= last_index:
            return OracleResult(+total, 0.0, k + 1)
        if a == 0:
            continue
        if last_a > 0:
            ratio = (a / last_a) ** (mpmath.mpf(1) / (k - last_k))
        if k >= config.MIN_TERMS and a <= tail_tol * max(1, abs(total)):
            streak += 1
        else:
            streak = 0
        if streak >= config.STOP_STREAK and ratio < config.RATIO_GUARD:
            return OracleResult(+total, float(a * ratio / (1 - ratio)), k + 1)
        last_a, last_k = a, k
    raise NonConvergenceError(f"oracle did not converge within {budget} terms")


def _gamma_upper(x: mpmath.mpf) -> mpmath.mpf:
    try:
        return mpmath.gamma(x)
    except ValueError as e:
        raise PoleError(f"numerator Gamma({x}) is a pole: {e}")


# =============================================================================
# FAMILIES
# =============================================================================

def wright(alpha: float, beta: float, z: float) -> OracleResult:
    """Σ z^k / (k! Γ(αk+β))."""
    with mpmath.workdps(config.ORACLE_DPS + _guard_digits(z)):
        a, b, x = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(z)
        return _sum(lambda k: x ** k * mpmath.rgamma(a * k + b) / mpmath.factorial(k))


def gen_wright(alpha: float, beta: float, gamma: float, sigma: float, z: float) -> OracleResult:
    """Σ (γ)_k/(σ)_k · z^k / (k! Γ(αk+β))."""
    last_index = None
    if gamma <= 0 and float(gamma).is_integer():
        last_index = int(-gamma)
    with mpmath.workdps(config.ORACLE_DPS + _guard_digits(z)):
        a, b, x = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(z)
        g, s = mpmath.mpf(gamma), mpmath.mpf(sigma)

        def term(k: int) -> mpmath.mpf:
            return (mpmath.rf(g, k) / mpmath.rf(s, k) * x ** k
                    * mpmath.rgamma(a * k + b) / mpmath.factorial(k))

        return _sum(term, last_index)


def fox_wright(upper: Sequence[Tuple[float, float]], lower: Sequence[Tuple[float, float]],
               z: float) -> OracleResult:
    """Σ ∏Γ(a_i+α_i k) / ∏Γ(b_j+β_j k) · z^k/k!."""
    with mpmath.workdps(config.ORACLE_DPS + _guard_digits(z)):
        up = [(mpmath.mpf(a), mpmath.mpf(s)) for a, s in upper]
        lo = [(mpmath.mpf(b), mpmath.mpf(s)) for b, s in lower]
        x = mpmath.mpf(z)

        def term(k: int) -> mpmath.mpf:
            t = x ** k / mpmath.factorial(k)
            for a, s in up:
                t *= _gamma_upper(a + s * k)
            for b, s in lo:
                t *= mpmath.rgamma(b + s * k)
            return t

        return _sum(term)


def mittag_leffler(pairs: Sequence[Tuple[float, float]], z: float) -> OracleResult:
    """Σ z^k / ∏Γ(β_j + k B_j), pairs as (B_j, β_j)."""
    with mpmath.workdps(config.ORACLE_DPS + _guard_digits(z)):
        ps = [(mpmath.mpf(B), mpmath.mpf(beta)) for B, beta in pairs]
        x = mpmath.mpf(z)

        def term(k: int) -> mpmath.mpf:
            t = x ** k
            for B, beta in ps:
                t *= mpmath.rgamma(beta + B * k)
            return t

        return _sum(term)


def alternating_bracket(alpha: float, beta: float, z: float, n_terms: int) -> Tuple[float, float]:
    """
    Bracket W_{α,β}(-z) by the partial sums S_{n-1}, S_n of its alternating series.

    Valid once the term magnitudes decrease from index n on, which holds for
    0 < z < 1 and β > x* from k = 2.
    """
    with mpmath.workdps(config.ORACLE_DPS):
        a, b, x = mpmath.mpf(alpha), mpmath.mpf(beta), mpmath.mpf(z)
        partial = [mpmath.mpf(0)]
        for k in range(n_terms + 1):
            partial.append(partial[-1] + (-x) ** k * mpmath.rgamma(a * k + b) / mpmath.factorial(k))
        lo, hi = sorted((partial[-2], partial[-1]))
        return float(lo), float(hi)


def to_float(result: OracleResult) -> float:
    return float(result.value)
