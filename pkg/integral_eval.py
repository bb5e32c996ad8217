"""
integral_eval.py
================
Independent evaluation of Wright-family functions by quadrature over their
integral representations; the cross-validation oracle for series_eval.

Representations (all on [0, 1]):
- Wright, β > α > 0:
    W_{α,β}(z) = c ∫ (1 - t^{1/α})^{β-α-1} W_{α,α}(z t) dt,   c = 1/(α Γ(β-α))
- generalized Wright, σ > γ > 0 (Beta kernel):
    W^{γ,σ}_{α,β}(z) = 1/B(γ, σ-γ) ∫ t^{γ-1} (1-t)^{σ-γ-1} W_{α,β}(z t) dt
- generalized Wright, β > α > 0 (same kernel as the Wright form, inner W^{γ,σ}_{α,α})

Endpoint singularities go into the weight of a Gauss-Jacobi rule. For the
(1 - t^{1/α}) kernel the substitution t = v^p with p = αq (q the smallest
integer <= 8 making p an integer) gives
    c p ∫ (1-v)^{β-α-1} v^{p-1} S(v)^{β-α-1} W_{α,α}(z v^p) dv,   S(v) = 1 + v + ... + v^{q-1}
whose smooth factor is analytic; irrational α falls back to t = u^α (q = 1).

Error estimate: |Q_2n - Q_n| plus the propagated series error of the inner
function; node counts double from QuadratureSpec.node_count up to
config.MAX_QUADRATURE_NODES.
"""

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Tuple

import numpy as np
from scipy import integrate, special

import config
from errors import DomainError, QuadratureError
from gamma_core import beta as beta_fn
from gamma_core import gamma as gamma_fn
from series_eval import (Evaluation, GenWrightParams, WrightParams, gen_wright,
                         wright)

RULES = ("jacobi_weighted", "adaptive_subdivision")
SUBSTITUTIONS = ("auto", "power")


@dataclass(frozen=True)
class QuadratureSpec:
    """Starting node count, absolute tolerance and rule."""
    node_count: int = config.MIN_QUADRATURE_NODES
    target_abs_tol: float = config.DEFAULT_QUAD_TOL
    rule: str = "jacobi_weighted"

    def __post_init__(self):
        if int(self.node_count) != self.node_count or self.node_count < config.MIN_QUADRATURE_NODES:
            raise DomainError(
                f"node_count must be an integer >= {config.MIN_QUADRATURE_NODES}, "
                f"got {self.node_count}")
        if not (self.target_abs_tol > 0 and math.isfinite(self.target_abs_tol)):
            raise DomainError(f"target_abs_tol must be > 0, got {self.target_abs_tol}")
        if self.rule not in RULES:
            raise DomainError(f"rule must be one of {RULES}, got {self.rule!r}")


@dataclass(frozen=True)
class WeightedIntegral:
    """
    scale · ∫₀¹ (1-v)^a v^b g(v) dv, with g returning (value, absolute error).
    """
    a: float
    b: float
    scale: float
    integrand: Callable[[float], Tuple[float, float]]


# =============================================================================
# RULES
# =============================================================================

@lru_cache(maxsize=128)
def jacobi_nodes(n: int, a: float, b: float) -> Tuple[np.ndarray, np.ndarray]:
    """
    n-point Gauss-Jacobi nodes and weights on [0, 1] for (1-v)^a v^b.
    """
    x, w = special.roots_jacobi(n, a, b)
    v = 0.5 * (1.0 + x)
    w = w * 2.0 ** (-(a + b + 1.0))
    v.setflags(write=False)
    w.setflags(write=False)
    return v, w


def _jacobi_sum(integral: WeightedIntegral, n: int) -> Tuple[float, float, float]:
    """Return (Q_n, propagated inner error, Σ|w g|)."""
    nodes, weights = jacobi_nodes(n, integral.a, integral.b)
    values = np.empty(n)
    errors = np.empty(n)
    for i, v in enumerate(nodes.tolist()):
        values[i], errors[i] = integral.integrand(v)
    products = weights * values
    return (float(math.fsum(products.tolist())),
            float(np.dot(weights, np.abs(errors))),
            float(np.sum(np.abs(products))))


def _integrate_jacobi(integral: WeightedIntegral, spec: QuadratureSpec) -> Evaluation:
    n = int(spec.node_count)
    previous, _, _ = _jacobi_sum(integral, n)
    used = n
    diff = math.inf
    while 2 * n <= config.MAX_QUADRATURE_NODES:
        n *= 2
        current, inner_err, magnitude = _jacobi_sum(integral, n)
        used += n
        diff = abs(current - previous)
        floor = 16.0 * config.EPS * magnitude
        if diff <= max(spec.target_abs_tol / abs(integral.scale), floor):
            scale = abs(integral.scale)
            return Evaluation(integral.scale * current, scale * (diff + inner_err + floor),
                              used, "integral")
        previous = current
    raise QuadratureError(
        f"Gauss-Jacobi tolerance {spec.target_abs_tol} not met with "
        f"{config.MAX_QUADRATURE_NODES} nodes (last difference {diff * abs(integral.scale):.3e})")


def _integrate_adaptive(integral: WeightedIntegral, spec: QuadratureSpec) -> Evaluation:
    inner_errors = []
    calls = [0]

    def f(v: float) -> float:
        value, err = integral.integrand(v)
        inner_errors.append(abs(err))
        calls[0] += 1
        return value

    scale = abs(integral.scale)
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, abserr = integrate.quad(f, 0.0, 1.0, weight="alg",
                                           wvar=(integral.b, integral.a),
                                           epsabs=spec.target_abs_tol / scale,
                                           epsrel=50.0 * config.EPS, limit=200)
        except integrate.IntegrationWarning as e:
            raise QuadratureError(f"adaptive quadrature failed: {e}")
    inner = max(inner_errors, default=0.0) * math.exp(special.betaln(integral.a + 1, integral.b + 1))
    return Evaluation(integral.scale * value, scale * (abserr + inner), calls[0], "integral")


def integrate_weighted(integral: WeightedIntegral, spec: QuadratureSpec) -> Evaluation:
    if spec.rule == "adaptive_subdivision":
        return _integrate_adaptive(integral, spec)
    return _integrate_jacobi(integral, spec)


# =============================================================================
# (1 - t^{1/α}) KERNEL
# =============================================================================

def substitution_exponents(alpha: float, substitution: str = "auto") -> Tuple[float, int]:
    """
    Return (p, q) for t = v^p with p = αq.

    "auto" picks the smallest q <= MAX_SUBSTITUTION_DENOMINATOR making αq an
    integer; "power" (and irrational α) gives (α, 1).
    """
    if substitution not in SUBSTITUTIONS:
        raise DomainError(f"substitution must be one of {SUBSTITUTIONS}, got {substitution!r}")
    if substitution == "auto":
        for q in range(1, config.MAX_SUBSTITUTION_DENOMINATOR + 1):
            p = alpha * q
            if abs(p - round(p)) <= 1e-12 * max(1.0, p):
                return float(round(p)), q
    return alpha, 1


def _power_kernel(alpha: float, beta: float, z: float,
                  inner: Callable[[float], Evaluation], substitution: str) -> WeightedIntegral:
    if not alpha > 0:
        raise DomainError(f"integral representation needs alpha > 0, got {alpha}")
    if not beta > alpha:
        raise DomainError(f"integral representation needs beta > alpha, got beta={beta}, alpha={alpha}")
    d = beta - alpha - 1.0
    p, q = substitution_exponents(alpha, substitution)
    c = 1.0 / (alpha * gamma_fn(beta - alpha))

    def integrand(v: float) -> Tuple[float, float]:
        factor = sum(v ** j for j in range(q)) ** d if q > 1 else 1.0
        ev = inner(z * v ** p)
        return factor * ev.value, factor * ev.abs_error_estimate

    return WeightedIntegral(a=d, b=p - 1.0, scale=c * p, integrand=integrand)


def wright_via_integral(p: WrightParams, z: float, q: QuadratureSpec = QuadratureSpec(),
                        substitution: str = "auto") -> Evaluation:
    """
    W_{α,β}(z) from the (1 - t^{1/α}) kernel with inner W_{α,α}.

    Raises:
        DomainError: α <= 0 or β <= α
        QuadratureError: tolerance not met at maximum refinement
    """
    inner_params = WrightParams(p.alpha, p.alpha)
    integral = _power_kernel(p.alpha, p.beta, float(z),
                             lambda x: wright(inner_params, x), substitution)
    return integrate_weighted(integral, q)


def gen_wright_via_pochhammer_kernel(p: GenWrightParams, z: float,
                                     q: QuadratureSpec = QuadratureSpec(),
                                     substitution: str = "auto") -> Evaluation:
    """W^{γ,σ}_{α,β}(z) from the (1 - t^{1/α}) kernel with inner W^{γ,σ}_{α,α}."""
    inner_params = GenWrightParams(p.alpha, p.alpha, p.gamma, p.sigma)
    integral = _power_kernel(p.alpha, p.beta, float(z),
                             lambda x: gen_wright(inner_params, x), substitution)
    return integrate_weighted(integral, q)


# =============================================================================
# BETA KERNEL
# =============================================================================

def gen_wright_via_beta_kernel(p: GenWrightParams, z: float,
                               q: QuadratureSpec = QuadratureSpec()) -> Evaluation:
    """
    W^{γ,σ}_{α,β}(z) = 1/B(γ, σ-γ) ∫ t^{γ-1}(1-t)^{σ-γ-1} W_{α,β}(z t) dt.

    Raises:
        DomainError: γ <= 0 or σ <= γ
    """
    if not p.gamma > 0:
        raise DomainError(f"Beta-kernel representation needs gamma > 0, got {p.gamma}")
    if not p.sigma > p.gamma:
        raise DomainError(f"Beta-kernel representation needs sigma > gamma, got "
                          f"sigma={p.sigma}, gamma={p.gamma}")
    z = float(z)
    inner_params = p.wright

    def integrand(t: float) -> Tuple[float, float]:
        ev = wright(inner_params, z * t)
        return ev.value, ev.abs_error_estimate

    integral = WeightedIntegral(a=p.sigma - p.gamma - 1.0, b=p.gamma - 1.0,
                                scale=1.0 / beta_fn(p.gamma, p.sigma - p.gamma),
                                integrand=integrand)
    return integrate_weighted(integral, q)


__all__ = [
    "QuadratureSpec", "WeightedIntegral", "jacobi_nodes", "integrate_weighted",
    "substitution_exponents", "wright_via_integral", "gen_wright_via_pochhammer_kernel",
    "gen_wright_via_beta_kernel",
]
