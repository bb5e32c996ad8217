"""
property_probes.py
==================
Finite, falsifiable probes for structural claims: complete monotonicity,
log-convexity in the argument and log-convexity in a parameter.

Probes are falsifiers, not provers: a pass means no sample contradicted the
property beyond the recorded noise slack.

Complete monotonicity:
    (-1)^n Δ_h^n f(x) >= 0 for n = 0..max_order, with Δ_h the forward difference.
    The order-n margin is reported as (-1)^n Δ_h^n f(x) / 2^n, so a single
    slack PROBE_NOISE_FACTOR·eps·max|f| covers every order.

Log-convexity:
    log f(x) + log f(y) - 2 log f((x+y)/2) >= 0 over all grid pairs; midpoints
    of a uniform grid lie on the half-step grid, so 2n-1 evaluations suffice.
"""

from dataclasses import dataclass
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy import special

import config
from errors import DomainError, PositivityError


@dataclass(frozen=True)
class ProbeResult:
    """Outcome of one probe; passed iff worst_margin >= -slack."""
    passed: bool
    worst_margin: float
    worst_point: Dict[str, float]
    samples: int
    slack: float
    failing_order: Optional[int] = None


def _check_interval(interval: Tuple[float, float], grid_n: int, positive: bool) -> Tuple[float, float]:
    lo, hi = (float(v) for v in interval)
    if not (np.isfinite(lo) and np.isfinite(hi)) or lo >= hi:
        raise DomainError(f"interval must satisfy lo < hi, got ({lo}, {hi})")
    if positive and lo <= 0:
        raise DomainError(f"interval must lie in (0, inf), got ({lo}, {hi})")
    if int(grid_n) != grid_n or grid_n < 2:
        raise DomainError(f"grid_n must be an integer >= 2, got {grid_n}")
    return lo, hi


# =============================================================================
# COMPLETE MONOTONICITY
# =============================================================================

def check_completely_monotone(f: Callable[[float], float], interval: Tuple[float, float],
                             max_order: int = config.PROBE_DEFAULTS["max_order"],
                             h: float = config.PROBE_DEFAULTS["h"],
                             grid_n: int = config.PROBE_DEFAULTS["grid_n"]) -> ProbeResult:
    """
    Sample (-1)^n Δ_h^n f(x) on grid_n base points for n = 0..max_order.

    Args:
        f: function of one real variable
        interval: (lo, hi) with 0 < lo < hi; every x + n h stays inside
        max_order: highest difference order
        h: difference step
        grid_n: number of base points

    Returns:
        ProbeResult with failing_order = the smallest order with a violation
    """
    lo, hi = _check_interval(interval, grid_n, positive=True)
    if int(max_order) != max_order or max_order < 0:
        raise DomainError(f"max_order must be a non-negative integer, got {max_order}")
    if not h > 0 or h * max_order >= hi - lo:
        raise DomainError(f"need h > 0 and h*max_order < hi-lo, got h={h}, max_order={max_order}")

    base = np.linspace(lo, hi - h * max_order, int(grid_n))
    offsets = np.arange(max_order + 1) * h
    values = np.array([[f(x + dx) for dx in offsets] for x in base])
    slack = config.PROBE_NOISE_FACTOR * config.EPS * float(np.max(np.abs(values)))

    worst_margin, worst_point = np.inf, {}
    failing_order = None
    for n in range(max_order + 1):
        j = np.arange(n + 1)
        stencil = (-1.0) ** j * special.comb(n, j)
        margins = values[:, :n + 1] @ stencil / 2.0 ** n
        i = int(np.argmin(margins))
        if margins[i] < worst_margin:
            worst_margin, worst_point = float(margins[i]), {"x": float(base[i]), "order": n}
        if failing_order is None and margins[i] < -slack:
            failing_order = n

    return ProbeResult(passed=failing_order is None, worst_margin=worst_margin,
                       worst_point=worst_point, samples=int(grid_n) * (max_order + 1),
                       slack=slack, failing_order=failing_order)


def check_derivative_signs(derivative: Callable[[int, float], float], interval: Tuple[float, float],
                           max_order: int = 2,
                           grid_n: int = config.PROBE_DEFAULTS["grid_n"]) -> ProbeResult:
    """
    Check (-1)^n f^(n)(x) >= 0 from closed-form derivatives f^(n) = derivative(n, x).
    """
    lo, hi = _check_interval(interval, grid_n, positive=True)
    grid = np.linspace(lo, hi, int(grid_n))
    worst_margin, worst_point = np.inf, {}
    failing_order, scale = None, 0.0
    signed = {}
    for n in range(max_order + 1):
        signed[n] = np.array([(-1.0) ** n * derivative(n, x) for x in grid])
        scale = max(scale, float(np.max(np.abs(signed[n]))))
    slack = config.PROBE_NOISE_FACTOR * config.EPS * scale
    for n, margins in signed.items():
        i = int(np.argmin(margins))
        if margins[i] < worst_margin:
            worst_margin, worst_point = float(margins[i]), {"x": float(grid[i]), "order": n}
        if failing_order is None and margins[i] < -slack:
            failing_order = n
    return ProbeResult(passed=failing_order is None, worst_margin=worst_margin,
                       worst_point=worst_point, samples=int(grid_n) * (max_order + 1),
                       slack=slack, failing_order=failing_order)


# =============================================================================
# LOG-CONVEXITY
# =============================================================================

def _midpoint_log_convexity(f: Callable[[float], float], lo: float, hi: float, grid_n: int,
                            name: str) -> ProbeResult:
    fine = np.linspace(lo, hi, 2 * int(grid_n) - 1)
    values = np.array([f(x) for x in fine])
    bad = np.flatnonzero(~(values > 0))
    if bad.size:
        k = bad[0]
        raise PositivityError(f"log-convexity probe needs f > 0; f({fine[k]}) = {values[k]}")
    logs = np.log(values)
    slack = config.PROBE_NOISE_FACTOR * config.EPS * (1.0 + float(np.max(np.abs(logs))))

    idx = np.arange(0, len(fine), 2)
    i, j = np.triu_indices(len(idx), k=1)
    margins = logs[idx[i]] + logs[idx[j]] - 2.0 * logs[(idx[i] + idx[j]) // 2]
    w = int(np.argmin(margins))
    worst = float(margins[w])
    point = {f"{name}_lo": float(fine[idx[i[w]]]), f"{name}_hi": float(fine[idx[j[w]]])}
    return ProbeResult(passed=worst >= -slack, worst_margin=worst, worst_point=point,
                       samples=len(margins), slack=slack)


def check_log_convex_arg(f: Callable[[float], float], interval: Tuple[float, float],
                         grid_n: int = config.PROBE_DEFAULTS["grid_n"]) -> ProbeResult:
    """
    Midpoint log-convexity of x -> f(x) over all pairs of a uniform grid.

    Raises:
        PositivityError: some sample f <= 0
    """
    lo, hi = _check_interval(interval, grid_n, positive=False)
    return _midpoint_log_convexity(f, lo, hi, grid_n, "x")


def check_log_convex_param(family: Callable[[float], float], param_interval: Tuple[float, float],
                           grid_n: int = config.PROBE_DEFAULTS["grid_n"]) -> ProbeResult:
    """
    Midpoint log-convexity of a parameter -> family(parameter) at a fixed argument.
    """
    lo, hi = _check_interval(param_interval, grid_n, positive=False)
    return _midpoint_log_convexity(family, lo, hi, grid_n, "param")


__all__ = [
    "ProbeResult", "check_completely_monotone", "check_derivative_signs",
    "check_log_convex_arg", "check_log_convex_param",
]
