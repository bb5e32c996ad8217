"""
series_eval.py
==============
Error-controlled truncated-series evaluation of the Wright, generalized Wright,
Fox-Wright and multi-parametric Mittag-Leffler functions.

Every family is summed by the same engine:
- term coefficients are built in blocks from log-gamma differences with sign
  tracking, then exponentiated once per term
- the running total is a compensated (Neumaier) sum
- summation stops once |t_k| <= eps*|S| for 3 consecutive terms with k >= 8 and
  a measured term ratio below 1/2; the reported error is the geometric tail
  |t_K| r/(1-r) plus the rounding of the log-domain terms
- more than config.term_budget() terms is a NonConvergenceError
- an estimate above config.ACCURACY_TARGET*max(1, |S|) is a PrecisionLossError;
  this happens under heavy cancellation (large negative z, -1 < α < 0) and
  precision="auto" then repeats the sum in the mpmath oracle

Pole policy for reciprocal-Gamma factors 1/Γ(s*k + shift):
- scale s >= 0: a pole reached by a term with nonzero numerator raises PoleError
- scale s < 0 (e.g. -1 < α < 0): 1/Γ(pole) = 0, the term vanishes

Overflow guard: a single term above DBL_MAX raises GammaOverflowError; for the
Wright function this starts well beyond |z| = 500.
"""

import math
import sys
from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence, Tuple

import numpy as np
from scipy import special

import config
import oracle
from compensated import NeumaierSum
from errors import (ConvergenceDomainError, DomainError, GammaOverflowError,
                    NonConvergenceError, PoleError, PrecisionLossError)
from gamma_core import find_gamma_min, is_pole, log_abs_gamma, log_abs_rgamma, rgamma

LOG_DBL_MAX = math.log(sys.float_info.max)
BLOCK_SIZE = 32

METHODS = ("series", "integral")
PRECISIONS = ("double", "extended", "auto")

Pair = Tuple[float, float]
Block = Tuple[np.ndarray, np.ndarray, np.ndarray]   # log|c_k|, sign c_k, log magnitude


# =============================================================================
# PARAMETER TYPES
# =============================================================================

def _finite(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class WrightParams:
    """(α, β) of W_{α,β}; the series is entire for α > -1."""
    alpha: float
    beta: float

    def __post_init__(self):
        alpha = _finite(self.alpha, "alpha")
        beta = _finite(self.beta, "beta")
        if alpha <= -1:
            raise DomainError(f"alpha must be > -1, got {alpha}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    @property
    def ordered_positive(self) -> bool:
        """β > α > 0: hypothesis of the integral representation."""
        return self.beta > self.alpha > 0

    @property
    def above_gamma_min(self) -> bool:
        """β > α > x*: hypothesis of the complete-monotonicity results."""
        return self.beta > self.alpha > find_gamma_min().x_star

    @property
    def shifted(self) -> "WrightParams":
        """(α, β+α), the parameters of the derivative."""
        return WrightParams(self.alpha, self.beta + self.alpha)


@dataclass(frozen=True)
class GenWrightParams:
    """(α, β, γ, σ) of W^{γ,σ}_{α,β}."""
    alpha: float
    beta: float
    gamma: float
    sigma: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "sigma"):
            object.__setattr__(self, name, _finite(getattr(self, name), name))
        if self.alpha <= -1:
            raise DomainError(f"alpha must be > -1, got {self.alpha}")

    @property
    def wright(self) -> WrightParams:
        return WrightParams(self.alpha, self.beta)

    @property
    def kernel_ready(self) -> bool:
        """σ > γ > 0: hypothesis of the Beta-kernel integral representation."""
        return self.sigma > self.gamma > 0

    @property
    def shifted(self) -> "GenWrightParams":
        """(α, β+α, γ+1, σ+1), the parameters of the derivative."""
        return GenWrightParams(self.alpha, self.beta + self.alpha, self.gamma + 1, self.sigma + 1)


def _pairs(values: Sequence[Sequence[float]], name: str) -> Tuple[Pair, ...]:
    out = []
    for item in values:
        if len(item) != 2:
            raise DomainError(f"{name} entries must be (shift, scale) pairs, got {item!r}")
        out.append((_finite(item[0], name), _finite(item[1], name)))
    return tuple(out)


@dataclass(frozen=True)
class FoxWrightSpec:
    """
    pΨq[(a_i, α_i); (b_j, β_j) | z] = Σ ∏Γ(a_i+α_i k) / ∏Γ(b_j+β_j k) · z^k/k!
    """
    upper: Tuple[Pair, ...]
    lower: Tuple[Pair, ...]

    def __post_init__(self):
        object.__setattr__(self, "upper", _pairs(self.upper, "upper"))
        object.__setattr__(self, "lower", _pairs(self.lower, "lower"))

    @property
    def convergence_margin(self) -> float:
        """1 + Σβ_j - Σα_i; the series is entire when positive."""
        return 1.0 + sum(s for _, s in self.lower) - sum(s for _, s in self.upper)


@dataclass(frozen=True)
class MittagLefflerSpec:
    """E_{(B,β)_n}(z) = Σ z^k / ∏Γ(β_j + k B_j), pairs given as (B_j, β_j)."""
    pairs: Tuple[Pair, ...]

    def __post_init__(self):
        pairs = _pairs(self.pairs, "pairs")
        if not pairs:
            raise DomainError("at least one (B, beta) pair is required")
        if sum(b * b for b, _ in pairs) == 0:
            raise DomainError("B_1^2 + ... + B_n^2 must be nonzero")
        object.__setattr__(self, "pairs", pairs)

    @property
    def n(self) -> int:
        return len(self.pairs)

    def to_fox_wright(self) -> FoxWrightSpec:
        """Numerator (1, 1) cancels the k! of the Fox-Wright form."""
        return FoxWrightSpec(upper=((1.0, 1.0),), lower=tuple((beta, b) for b, beta in self.pairs))


@dataclass(frozen=True)
class Evaluation:
    """A computed value with an absolute error estimate and the work it took."""
    value: float
    abs_error_estimate: float
    terms_used: int
    method: str = "series"

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"method must be one of {METHODS}, got {self.method!r}")

    def scaled(self, factor: float) -> "Evaluation":
        return Evaluation(self.value * factor, self.abs_error_estimate * abs(factor),
                          self.terms_used, self.method)


# =============================================================================
# POLES
# =============================================================================

def _check_gamma_poles(scale: float, shift: float, z: float, what: str) -> None:
    """
    Raise PoleError if Γ(scale*k + shift) has a pole at some summed k with z^k != 0.

    Only scale >= 0 is checked: with a negative scale the poles follow the
    1/Γ(pole) = 0 convention. Indices at or past the term budget are never
    summed and are not checked.
    """
    if scale < 0:
        return
    if is_pole(shift):
        raise PoleError(f"{what}: Gamma({shift}) is a pole")
    if z == 0 or scale == 0 or shift > 0:
        return
    last_k = min(int(math.ceil(-shift / scale)), config.term_budget() - 1)
    if scale >= 1:
        candidates = range(1, last_k + 1)
    else:
        # one candidate k per pole -n in reach of the first last_k terms
        first_n = max(0, int(math.floor(-shift - scale * last_k)))
        candidates = (int(round((-n - shift) / scale))
                      for n in range(first_n, int(math.floor(-shift)) + 1))
    for k in candidates:
        if 0 < k <= last_k and is_pole(scale * k + shift):
            raise PoleError(f"{what}: Gamma({scale}*{k} + {shift}) is a pole")


# =============================================================================
# COEFFICIENT BLOCKS
# =============================================================================

def _log_rgamma(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Elementwise (ln|1/Γ|, sign, |ln|Γ||) with 1/Γ(pole) = 0."""
    poles = (x <= 0) & (x == np.floor(x))
    safe = np.where(poles, 1.0, x)
    lg = special.gammaln(safe)
    log_abs = np.where(poles, -np.inf, -lg)
    sign = np.where(poles, 0.0, special.gammasgn(safe))
    return log_abs, sign, np.where(poles, 0.0, np.abs(lg))


def _log_gamma_upper(x: np.ndarray, what: str) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    poles = (x <= 0) & (x == np.floor(x))
    if np.any(poles):
        raise PoleError(f"{what}: numerator Gamma({x[poles][0]}) is a pole")
    lg = special.gammaln(x)
    return lg, special.gammasgn(x), np.abs(lg)


def _log_factorial(ks: np.ndarray) -> np.ndarray:
    return special.gammaln(ks + 1.0)


class _Pochhammer:
    """Running (τ)_k over consecutive blocks, as (log|.|, sign, log magnitude)."""

    def __init__(self, tau: float):
        self.tau = tau
        self._log = 0.0
        self._sign = 1.0
        self._mag = 0.0

    def block(self, ks: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        # (τ)_k = (τ)_{k-1} (τ+k-1); factor for k = 0 is the empty product
        factors = np.where(ks == 0, 1.0, self.tau + ks - 1.0)
        with np.errstate(divide="ignore"):
            logs = np.log(np.abs(factors))
        log_cum = self._log + np.cumsum(logs)
        sign_cum = self._sign * np.cumprod(np.sign(factors))
        mag_cum = self._mag + np.cumsum(np.where(np.isfinite(logs), np.abs(logs), 0.0))
        self._log, self._sign, self._mag = log_cum[-1], sign_cum[-1], mag_cum[-1]
        return log_cum, sign_cum, mag_cum


def _block_ranges() -> Iterator[np.ndarray]:
    k = 0
    while True:
        yield np.arange(k, k + BLOCK_SIZE, dtype=float)
        k += BLOCK_SIZE


def _wright_blocks(alpha: float, beta: float) -> Iterator[Block]:
    for ks in _block_ranges():
        log_rg, sign, mag = _log_rgamma(alpha * ks + beta)
        log_fact = _log_factorial(ks)
        yield log_rg - log_fact, sign, mag + log_fact


def _gen_wright_blocks(alpha: float, beta: float, gamma: float, sigma: float) -> Iterator[Block]:
    num, den = _Pochhammer(gamma), _Pochhammer(sigma)
    for (log_w, sign_w, mag_w), ks in zip(_wright_blocks(alpha, beta), _block_ranges()):
        log_g, sign_g, mag_g = num.block(ks)
        log_s, sign_s, mag_s = den.block(ks)
        yield log_w + log_g - log_s, sign_w * sign_g * sign_s, mag_w + mag_g + mag_s


def _fox_wright_blocks(spec: FoxWrightSpec) -> Iterator[Block]:
    for ks in _block_ranges():
        log_c = -_log_factorial(ks)
        sign = np.ones_like(ks)
        mag = -log_c
        for a, s in spec.upper:
            lg, sg, mg = _log_gamma_upper(a + s * ks, "fox_wright")
            log_c, sign, mag = log_c + lg, sign * sg, mag + mg
        for b, s in spec.lower:
            lg, sg, mg = _log_rgamma(b + s * ks)
            log_c, sign, mag = log_c + lg, sign * sg, mag + mg
        yield log_c, sign, mag


def _fox_wright_head(spec: FoxWrightSpec) -> float:
    """c_0 = ∏Γ(a_i) / ∏Γ(b_j) as one exponentiated log-gamma difference."""
    log_c, sign = 0.0, 1.0
    for a, _ in spec.upper:
        lg, sg = log_abs_gamma(a)
        log_c, sign = log_c + lg, sign * sg
    for b, _ in spec.lower:
        lg, sg = log_abs_rgamma(b)
        if sg == 0.0:
            return 0.0
        log_c, sign = log_c + lg, sign * sg
    if log_c > LOG_DBL_MAX:
        raise GammaOverflowError(f"Fox-Wright leading coefficient exceeds the double range "
                                 f"(log = {log_c})")
    return sign * math.exp(log_c)


# =============================================================================
# SUMMATION ENGINE
# =============================================================================

def _sum_series(blocks: Iterator[Block], z: float, head: float,
                last_index: Optional[int] = None) -> Evaluation:
    """
    Sum Σ c_k z^k from coefficient blocks; the k = 0 term is `head` exactly.

    Args:
        blocks: iterator of (log|c_k|, sign c_k, log magnitude) arrays for k = 0, 1, ...
        z: real argument
        head: c_0 computed directly, so that z = 0 returns it unchanged
        last_index: index of the last nonzero term of a terminating series
    """
    eps = config.EPS
    if z == 0.0 or last_index == 0:
        return Evaluation(head, eps * abs(head), 1, "series")

    budget = config.term_budget()
    log_z = math.log(abs(z))
    negative = z < 0

    acc = NeumaierSum()
    rounding = 0.0
    streak = 0
    last_a, last_k = 0.0, -1
    ratio = math.inf
    k = 0

    for log_c, sign_c, mag_c in blocks:
        ks = np.arange(k, k + len(log_c), dtype=float)
        log_t = log_c + ks * log_z
        if np.any(log_t > LOG_DBL_MAX):
            raise GammaOverflowError(f"series term exceeds the double range at z={z}")
        parity = np.where((ks % 2 == 1) & negative, -1.0, 1.0)
        with np.errstate(invalid="ignore"):
            values = np.where(sign_c == 0, 0.0, sign_c * parity * np.exp(log_t))
            mags = np.where(sign_c == 0, 0.0, mag_c + ks * abs(log_z))

        for value, mag in zip(values.tolist(), mags.tolist()):
            if k == 0:
                value = head
            acc.add(value)
            a = abs(value)
            if a > 0:
                rounding += a * (mag + 4.0)
                if last_a > 0:
                    ratio = (a / last_a) ** (1.0 / (k - last_k))
                partial = acc.value
                if k >= config.MIN_TERMS and partial != 0 and a <= eps * abs(partial):
                    streak += 1
                else:
                    streak = 0
                if streak >= config.STOP_STREAK and ratio < config.RATIO_GUARD:
                    tail = a * ratio / (1.0 - ratio)
                    return _accepted(partial, tail + eps * rounding + eps * abs(partial), k + 1, z)
                last_a, last_k = a, k
            k += 1
            if last_index is not None and k > last_index:
                partial = acc.value
                return _accepted(partial, eps * rounding + eps * abs(partial), k, z)
            if k >= budget:
                raise NonConvergenceError(
                    f"stopping rule not met within {budget} terms (z={z}, partial={acc.value})")

    raise NonConvergenceError("coefficient stream ended before convergence")


def _accepted(value: float, estimate: float, terms: int, z: float) -> Evaluation:
    """Evaluation, or PrecisionLossError when the estimate misses ACCURACY_TARGET."""
    if estimate > config.ACCURACY_TARGET * max(1.0, abs(value)):
        raise PrecisionLossError(
            f"double sum at z={z} has error estimate {estimate:.3e} for value {value!r}; "
            f"use precision='extended' or 'auto'")
    return Evaluation(value, estimate, terms, "series")


def _check_precision(precision: str) -> None:
    if precision not in PRECISIONS:
        raise DomainError(f"precision must be one of {PRECISIONS}, got {precision!r}")


def _from_oracle(result) -> Evaluation:
    value = float(result.value)
    return Evaluation(value, result.tail_bound + 0.5 * config.EPS * abs(value),
                      result.terms, "series")


def _evaluate(precision: str, summed: Callable[[], Evaluation],
              extended: Callable[[], "oracle.OracleResult"]) -> Evaluation:
    """Dispatch on precision; "auto" falls back to the oracle on PrecisionLossError."""
    if precision == "extended":
        return _from_oracle(extended())
    try:
        return summed()
    except PrecisionLossError:
        if precision != "auto":
            raise
        return _from_oracle(extended())


# =============================================================================
# PUBLIC OPERATIONS
# =============================================================================

def wright(p: WrightParams, z: float, precision: str = "double") -> Evaluation:
    """
    W_{α,β}(z) = Σ z^k / (k! Γ(αk+β)).

    Args:
        p: Wright parameters
        z: real argument
        precision: "double" (compensated float64), "extended" (mpmath oracle) or
            "auto" (double, falling back to the oracle on PrecisionLossError)

    Returns:
        Evaluation; value at z = 0 is 1/Γ(β) as computed by rgamma

    Raises:
        PoleError: some Γ(αk+β) pole is reached with a nonzero numerator
        PrecisionLossError: double precision only; the estimate exceeds
            1e-12·max(1, |value|), e.g. α = 0.1 at z = -50
    """
    _check_precision(precision)
    z = _finite(z, "z")
    _check_gamma_poles(p.alpha, p.beta, z, "wright")
    return _evaluate(precision,
                     lambda: _sum_series(_wright_blocks(p.alpha, p.beta), z, rgamma(p.beta)),
                     lambda: oracle.wright(p.alpha, p.beta, z))


def wright_neg(p: WrightParams, z: float, precision: str = "double") -> Evaluation:
    """W̌_{α,β}(z) = W_{α,β}(-z). Evaluated for any real z."""
    return wright(p, -_finite(z, "z"), precision)


def wright_derivative(p: WrightParams, z: float, precision: str = "double") -> Evaluation:
    """d/dz W_{α,β}(z) = W_{α,β+α}(z)."""
    return wright(p.shifted, z, precision)


def gen_wright(p: GenWrightParams, z: float, precision: str = "double") -> Evaluation:
    """
    W^{γ,σ}_{α,β}(z) = Σ (γ)_k/(σ)_k · z^k / (k! Γ(αk+β)).

    A nonpositive integer γ makes the series terminate; a nonpositive integer σ
    is a pole of the Pochhammer ratio.
    """
    _check_precision(precision)
    z = _finite(z, "z")
    if is_pole(p.sigma):
        raise PoleError(f"(sigma)_k vanishes for sigma={p.sigma}")
    _check_gamma_poles(p.alpha, p.beta, z, "gen_wright")
    last_index = int(-p.gamma) if is_pole(p.gamma) else None
    return _evaluate(precision,
                     lambda: _sum_series(_gen_wright_blocks(p.alpha, p.beta, p.gamma, p.sigma),
                                         z, rgamma(p.beta), last_index),
                     lambda: oracle.gen_wright(p.alpha, p.beta, p.gamma, p.sigma, z))


def gen_wright_derivative(p: GenWrightParams, z: float, precision: str = "double") -> Evaluation:
    """d/dz W^{γ,σ}_{α,β}(z) = (γ/σ) W^{γ+1,σ+1}_{α,β+α}(z)."""
    if p.sigma == 0:
        raise PoleError("sigma = 0 is a pole of the Pochhammer ratio")
    return gen_wright(p.shifted, z, precision).scaled(p.gamma / p.sigma)


def fox_wright(s: FoxWrightSpec, z: float, precision: str = "double") -> Evaluation:
    """
    Fox-Wright pΨq[(a_i, α_i); (b_j, β_j) | z].

    Raises:
        ConvergenceDomainError: 1 + Σβ_j - Σα_i <= 0
        PoleError: a numerator Gamma pole, or a denominator pole with β_j >= 0
    """
    _check_precision(precision)
    z = _finite(z, "z")
    margin = s.convergence_margin
    if margin <= 0:
        raise ConvergenceDomainError(
            f"1 + sum(beta_j) - sum(alpha_i) = {margin} <= 0; the series diverges")
    for a, scale in s.upper:
        _check_gamma_poles(scale, a, z, "fox_wright numerator")
    for b, scale in s.lower:
        _check_gamma_poles(scale, b, z, "fox_wright")
    return _evaluate(precision,
                     lambda: _sum_series(_fox_wright_blocks(s), z, _fox_wright_head(s)),
                     lambda: oracle.fox_wright(s.upper, s.lower, z))


def mittag_leffler(s: MittagLefflerSpec, z: float, precision: str = "double") -> Evaluation:
    """E_{(B,β)_n}(z), evaluated as 1Ψn[(1,1); (β_j, B_j) | z]."""
    return fox_wright(s.to_fox_wright(), z, precision)


def ml4(B1: float, beta1: float, B2: float, beta2: float, z: float,
        precision: str = "double") -> Evaluation:
    """Four-parametric E_{B1,β1;B2,β2}(z)."""
    return mittag_leffler(MittagLefflerSpec(((B1, beta1), (B2, beta2))), z, precision)


def ml2(B: float, beta: float, z: float, precision: str = "double") -> Evaluation:
    """Two-parametric E_{B,β}(z); ml2(1, 1, z) = e^z."""
    return mittag_leffler(MittagLefflerSpec(((B, beta),)), z, precision)


__all__ = [
    "WrightParams", "GenWrightParams", "FoxWrightSpec", "MittagLefflerSpec", "Evaluation",
    "wright", "wright_neg", "wright_derivative", "gen_wright", "gen_wright_derivative",
    "fox_wright", "mittag_leffler", "ml4", "ml2",
]
