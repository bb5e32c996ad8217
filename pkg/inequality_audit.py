"""
inequality_audit.py
===================
Catalog of Wright-family inequalities as signed-margin evaluators, grid sweeps
over the catalog, and the report files they produce.

Every entry carries:
- a hypothesis predicate; points outside it are recorded as hypothesis_not_met
  and never evaluated
- an expected class: "asserted" entries must hold on their hypothesis domain,
  "suspect" entries are swept and reported but never hard-asserted
- the grid axes it is swept over

Margin convention:
    margin = (claimed-larger - claimed-smaller) / max(1, |lhs|, |rhs|)
    margin >= 0 means the inequality holds as stated; margins in
    (-AUDIT_SLACK, 0) are roundoff and count as holds.
IDENT_1010 is an equality: margin = -|lhs - rhs| / scale, tolerance IDENTITY_TOL.

Report files (schemas are RECORD_FIELDS and SUMMARY_FIELDS):
- records.jsonl: one JSON object per record, sorted by id then point
- summary.csv:   one row per (id, segment)
An optional metadata line with a timestamp precedes the data in both files.
"""

import json
import math
import sys
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Callable, Dict, List, NamedTuple, Optional, Sequence, Tuple

import pandas as pd
from joblib import Parallel, delayed

import config
from errors import ConfigError, DomainError, WrightKitError
from gamma_core import gamma as G
from gamma_core import x_star
from series_eval import (FoxWrightSpec, GenWrightParams, WrightParams, fox_wright,
                         gen_wright, ml4, wright)

STATUSES = ("holds", "violated", "hypothesis_not_met", "eval_error")
EXPECTED = ("asserted", "suspect")
SEGMENTS = ("main", "negative_z")
POINT_KEYS = ("alpha", "beta", "gamma", "sigma", "z", "x", "y")

RECORD_FIELDS = ["id", "point", "lhs", "rhs", "margin", "raw_gap", "status",
                 "expected", "segment", "detail"]
SUMMARY_FIELDS = ["id", "segment", "expected", "points", "holds", "violated",
                  "hypothesis_not_met", "eval_error", "worst_margin", "worst_point"]

Point = Dict[str, float]


class InequalityId(str, Enum):
    W_NONNEG = "W_NONNEG"
    SUPERADD_25 = "SUPERADD_25"
    SUPERADD_25K = "SUPERADD_25K"
    TURAN_26 = "TURAN_26"
    EXPLB_27 = "EXPLB_27"
    UB_29 = "UB_29"
    PROD_210 = "PROD_210"
    DOUBLING_211 = "DOUBLING_211"
    TS_FW_ALPHA = "TS_FW_ALPHA"
    UB_6666 = "UB_6666"
    LB_777 = "LB_777"
    SUPERADD_Z0 = "SUPERADD_Z0"
    TURAN_Z1 = "TURAN_Z1"
    EXPLB_Z2 = "EXPLB_Z2"
    TURAN_SIGMA_Z3 = "TURAN_SIGMA_Z3"
    TURAN_GAMMA = "TURAN_GAMMA"
    TS_FW_GS = "TS_FW_GS"
    UB_88 = "UB_88"
    LB_888 = "LB_888"
    UB_1010 = "UB_1010"
    IDENT_1010 = "IDENT_1010"
    PROD_11111 = "PROD_11111"
    ML_SUPERADD = "ML_SUPERADD"
    ML_TURAN_Z = "ML_TURAN_Z"
    ML_EXPLB = "ML_EXPLB"
    ML_TURAN_SIGMA = "ML_TURAN_SIGMA"
    ML_UB = "ML_UB"
    ML_PROD = "ML_PROD"


class Sides(NamedTuple):
    """Both sides of a claim; relation ">=" reads lhs >= rhs."""
    lhs: float
    rhs: float
    relation: str
    detail: str = ""


# =============================================================================
# FOX-WRIGHT MOMENTS
# =============================================================================

@dataclass(frozen=True)
class SeriesMoments:
    """ψ_m = ∏Γ(a_i + α_i m) / ∏Γ(b_j + β_j m) for m = 0, 1, 2."""
    psi0: float
    psi1: float
    psi2: float


def series_moments(s: FoxWrightSpec) -> SeriesMoments:
    """
    Moments of a Fox-Wright parameter set.

    Raises:
        DomainError: a Gamma argument a_i + α_i m or b_j + β_j m is <= 0
    """
    psi = []
    for m in range(3):
        log_value = 0.0
        for sign, pairs in ((1.0, s.upper), (-1.0, s.lower)):
            for shift, scale in pairs:
                arg = shift + scale * m
                if arg <= 0:
                    raise DomainError(f"moment m={m} needs positive Gamma arguments, got {arg}")
                log_value += sign * math.lgamma(arg)
        psi.append(math.exp(log_value))
    return SeriesMoments(*psi)


def moment_conditions_hold(m: SeriesMoments) -> bool:
    """ψ1 > ψ2 and ψ1² < ψ0 ψ2."""
    return m.psi1 > m.psi2 and m.psi1 ** 2 < m.psi0 * m.psi2


def two_sided_bounds(m: SeriesMoments, z: float) -> Tuple[float, float]:
    """(ψ0 e^{ψ1|z|/ψ0}, ψ0 - (1 - e^{|z|}) ψ1)."""
    return (m.psi0 * math.exp(m.psi1 / m.psi0 * abs(z)),
            m.psi0 - (1.0 - math.exp(abs(z))) * m.psi1)


# =============================================================================
# FUNCTION SHORTHANDS
# =============================================================================

def _w(a: float, b: float, z: float) -> float:
    return wright(WrightParams(a, b), z).value


def _wc(a: float, b: float, z: float) -> float:
    return _w(a, b, -z)


def _gw(a: float, b: float, g: float, s: float, z: float) -> float:
    return gen_wright(GenWrightParams(a, b, g, s), z).value


def _gwc(a: float, b: float, g: float, s: float, z: float) -> float:
    return _gw(a, b, g, s, -z)


def _ml(a: float, b: float, B2: float, b2: float, z: float) -> float:
    return ml4(a, b, B2, b2, z).value


def _two_sided(spec: FoxWrightSpec, z: float) -> Sides:
    """
    Report the tighter side of lower <= Ψ(z) <= upper.

    The record margin is that side's; `detail` names it and carries both margins.
    """
    lower, upper = two_sided_bounds(series_moments(spec), z)
    value = fox_wright(spec, z).value
    lower_margin = signed_margin(value, lower)
    upper_margin = signed_margin(upper, value)
    margins = f"lower_margin={lower_margin!r}; upper_margin={upper_margin!r}"
    if lower_margin <= upper_margin:
        return Sides(lower, value, "<=", f"side=lower; {margins}")
    return Sides(value, upper, "<=", f"side=upper; {margins}")


# =============================================================================
# EVALUATORS
# =============================================================================

def _eval_w_nonneg(p: Point) -> Sides:
    return Sides(_wc(p["alpha"], p["beta"], p["z"]), 0.0, ">=")


def _eval_superadd_25(p: Point) -> Sides:
    a, b, x, y = p["alpha"], p["beta"], p["x"], p["y"]
    return Sides(_wc(a, b, x + y), _wc(a, b, x) * _wc(a, b, y) / G(b), ">=")


def _eval_superadd_25k(p: Point) -> Sides:
    a, b, x, y = p["alpha"], p["beta"], p["x"], p["y"]
    return Sides(_wc(a, b, x + y), G(b) * _wc(a, b, x) * _wc(a, b, y), ">=")


def _eval_turan_26(p: Point) -> Sides:
    a, b, z = p["alpha"], p["beta"], p["z"]
    return Sides(_wc(a, b + 2 * a, z) * _wc(a, b, z), _wc(a, b + a, z) ** 2, ">=")


def _eval_explb_27(p: Point) -> Sides:
    a, b, z = p["alpha"], p["beta"], p["z"]
    return Sides(_wc(a, b, z), math.exp(-G(b) * z / G(b + a)) / G(b), ">=")


def _eval_ub_29(p: Point) -> Sides:
    a, b, z = p["alpha"], p["beta"], p["z"]
    bound = G(2 * a) / G(b) ** 2 * math.expm1(G(a) * z / G(2 * a)) / z
    return Sides(_w(a, b, z), bound, "<=")


def _eval_prod_210(p: Point) -> Sides:
    a, b, z = p["alpha"], p["beta"], p["z"]
    k = G(b - a) / (G(b - a - 1) * G(b - a + 1))
    return Sides(_w(a, b + 1, z) * _w(a, b - 1, z), k * _w(a, a + 1, z) * _w(a, b, z), "<=")


def _eval_doubling_211(p: Point) -> Sides:
    a, z = p["alpha"], p["z"]
    return Sides(2.0 * _w(a, a + 3, z), _w(a, a + 2, z), "<=")


def _eval_ts_fw_alpha(p: Point) -> Sides:
    a, b = p["alpha"], p["beta"]
    return _two_sided(FoxWrightSpec(((a, a),), ((b, a),)), p["z"])


def _eval_ub_6666(p: Point) -> Sides:
    a, b, z = p["alpha"], p["beta"], p["z"]
    bound = 1.0 / G(b) + G(2 * a) * math.expm1(G(a) * z / G(2 * a)) / (G(a) * G(b + a))
    return Sides(_w(a, b, z), bound, "<=")


def _eval_lb_777(p: Point) -> Sides:
    a, b, z = p["alpha"], p["beta"], p["z"]
    return Sides(_wc(a, b, z), math.exp(G(b) * z / G(a + b)) / G(b), ">=")


def _eval_superadd_z0(p: Point) -> Sides:
    a, b, g, s, x, y = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["x"], p["y"]
    rhs = _gwc(a, b, g, s, x) * _gwc(a, b, g, s, y) / G(b)
    return Sides(_gwc(a, b, g, s, x + y), rhs, ">=")


def _eval_turan_z1(p: Point) -> Sides:
    a, b, g, s, z = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["z"]
    lhs = (g + 1) / (s + 1) * _gwc(a, b + 2 * a, g + 2, s + 2, z) * _gwc(a, b, g, s, z)
    rhs = g / s * _gwc(a, b + a, g + 1, s + 1, z) ** 2
    return Sides(lhs, rhs, ">=")


def _eval_explb_z2(p: Point) -> Sides:
    a, b, g, s, z = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["z"]
    return Sides(_gwc(a, b, g, s, z), math.exp(-g * G(b) * z / (s * G(b + a))) / G(b), ">=")


def _eval_turan_sigma_z3(p: Point) -> Sides:
    a, b, g, s, z = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["z"]
    return Sides(_gw(a, b, g, s, z) * _gw(a, b, g, s + 2, z), _gw(a, b, g, s + 1, z) ** 2, ">=")


def _eval_turan_gamma(p: Point) -> Sides:
    a, b, g, s, z = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["z"]
    lhs = _gw(a, b, g, s, z) * _gw(a, b, g + 2, s, z)
    return Sides(lhs, g / (g + 1) * _gw(a, b, g + 1, s, z) ** 2, ">=")


def _eval_ts_fw_gs(p: Point) -> Sides:
    g, s = p["gamma"], p["sigma"]
    return _two_sided(FoxWrightSpec(((g, 1.0),), ((s, 1.0),)), p["z"])


def _eval_ub_88(p: Point) -> Sides:
    a, b, g, s, z = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["z"]
    bound = (1.0 + g / s * math.expm1(G(b) * z / G(b + a))) / G(b)
    return Sides(_gw(a, b, g, s, z), bound, "<=")


def _eval_lb_888(p: Point) -> Sides:
    a, b, g, s, z = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["z"]
    return Sides(_gwc(a, b, g, s, z), math.exp(g * G(b) * z / (s * G(b + a))) / G(b), ">=")


def _w12_closed_form(a: float, b: float, z: float) -> float:
    """(Γ(β-α) W_{α,β-α}(z) - 1) / (Γ(β-α) z)."""
    c = G(b - a)
    return (c * _w(a, b - a, z) - 1.0) / (c * z)


def _eval_ub_1010(p: Point) -> Sides:
    a, b, g, s, z = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["z"]
    return Sides(_gw(a, b, g, s, z), _w12_closed_form(a, b, z), "<=")


def _eval_ident_1010(p: Point) -> Sides:
    a, b, z = p["alpha"], p["beta"], p["z"]
    return Sides(_w12_closed_form(a, b, z), _gw(a, b, 1.0, 2.0, z), "==")


def _eval_prod_11111(p: Point) -> Sides:
    a, b, g, s, z = p["alpha"], p["beta"], p["gamma"], p["sigma"], p["z"]
    k = (G(s - g) * G(s + 1) * G(s - 1)
         / (G(s) * G(g) * G(s - g + 1) * G(s - g - 1)))
    lhs = _gw(a, b, g, s + 1, z) * _gw(a, b, g, s - 1, z)
    return Sides(lhs, k * _gw(a, b, 1.0, 2.0, z) * _gw(a, b, g, s, z), "<=")


def _eval_ml_superadd(p: Point) -> Sides:
    a, b, s, x, y = p["alpha"], p["beta"], p["sigma"], p["x"], p["y"]
    rhs = G(s) / G(b) * _ml(a, b, 1.0, s, -x) * _ml(a, b, 1.0, s, -y)
    return Sides(_ml(a, b, 1.0, s, -(x + y)), rhs, ">=")


def _eval_ml_turan_z(p: Point) -> Sides:
    a, b, s, z = p["alpha"], p["beta"], p["sigma"], p["z"]
    lhs = 2.0 / (s + 1) * _ml(a, b + 2 * a, 3.0, s + 2, -z) * _ml(a, b, 1.0, s, -z)
    rhs = _ml(a, b + a, 2.0, s + 1, -z) ** 2 / s
    return Sides(lhs, rhs, ">=")


def _eval_ml_explb(p: Point) -> Sides:
    a, b, s, z = p["alpha"], p["beta"], p["sigma"], p["z"]
    return Sides(_ml(a, b, 1.0, s, -z), math.exp(G(b) * z / (s * G(b + a))) / G(s), ">=")


def _eval_ml_turan_sigma(p: Point) -> Sides:
    a, b, s, z = p["alpha"], p["beta"], p["sigma"], p["z"]
    lhs = _ml(a, b, 1.0, s + 2, z) * _ml(a, b, 1.0, s, z)
    return Sides(lhs, s / (s + 1) * _ml(a, b, 1.0, s + 1, z) ** 2, ">=")


def _eval_ml_ub(p: Point) -> Sides:
    a, b, s, z = p["alpha"], p["beta"], p["sigma"], p["z"]
    bound = G(s) / G(b) * (1.0 + math.expm1(G(b) * z / G(b + a)) / s)
    return Sides(_ml(a, b, 1.0, s, z), bound, "<=")


def _eval_ml_prod(p: Point) -> Sides:
    a, b, s, z = p["alpha"], p["beta"], p["sigma"], p["z"]
    k = G(s - 1) / (G(s) * G(s - 2))
    lhs = _ml(a, b, 1.0, s + 1, z) * _ml(a, b, 1.0, s - 1, z)
    return Sides(lhs, k * _ml(a, b, 1.0, 2.0, z) * _ml(a, b, 1.0, s, z), "<=")


# =============================================================================
# HYPOTHESES
# =============================================================================

def _unit(z: float) -> bool:
    return 0 < z < 1


def _pair_ok(p: Point) -> bool:
    return p["x"] > 0 and p["y"] > 0 and p["x"] + p["y"] < 1


def _above_xs(p: Point) -> bool:
    return p["beta"] > p["alpha"] > x_star()


def _ordered(p: Point) -> bool:
    return p["beta"] > p["alpha"] > 0


def _kernel(p: Point) -> bool:
    return p["sigma"] > p["gamma"] > 0


def _all_positive(p: Point, keys: Sequence[str]) -> bool:
    return all(p[k] > 0 for k in keys)


def _ts_alpha_ok(p: Point) -> bool:
    if not _ordered(p):
        return False
    a, b = p["alpha"], p["beta"]
    return moment_conditions_hold(series_moments(FoxWrightSpec(((a, a),), ((b, a),))))


def _ts_gs_ok(p: Point) -> bool:
    if not _kernel(p):
        return False
    return moment_conditions_hold(series_moments(FoxWrightSpec(((p["gamma"], 1.0),), ((p["sigma"], 1.0),))))


# =============================================================================
# CATALOG
# =============================================================================

@dataclass(frozen=True)
class InequalityEntry:
    """
    One auditable claim.

    axes:       parameter axes of the sweep ("alpha", "beta", "gamma", "sigma")
    z_domain:   "unit" (0 < z < 1 grid), "positive" (adds z_extra),
                "real" (adds z_negative) or "pairs" (super-additivity (x, y))
    sigma_base: σ = base + sigma_offset with base γ ("gamma") or 1 ("one")
    """
    id: InequalityId
    expected: str
    statement: str
    axes: Tuple[str, ...]
    z_domain: str
    hypothesis: Callable[[Point], bool]
    evaluate: Callable[[Point], Sides]
    sigma_base: str = "gamma"


_AB = ("alpha", "beta")
_ABGS = ("alpha", "beta", "gamma", "sigma")
_ABS = ("alpha", "beta", "sigma")

_ENTRIES = [
    InequalityEntry(InequalityId.W_NONNEG, "asserted", "W̌_{α,β}(z) >= 0", _AB, "unit",
                    lambda p: p["alpha"] > 0 and p["beta"] > x_star() and _unit(p["z"]),
                    _eval_w_nonneg),
    InequalityEntry(InequalityId.SUPERADD_25, "suspect", "W̌(x+y) >= W̌(x)W̌(y)/Γ(β)", _AB, "pairs",
                    lambda p: _above_xs(p) and _pair_ok(p), _eval_superadd_25),
    InequalityEntry(InequalityId.SUPERADD_25K, "suspect", "W̌(x+y) >= Γ(β)W̌(x)W̌(y)", _AB, "pairs",
                    lambda p: _above_xs(p) and _pair_ok(p), _eval_superadd_25k),
    InequalityEntry(InequalityId.TURAN_26, "suspect", "W̌_{α,β+2α}W̌_{α,β} >= W̌_{α,β+α}^2",
                    _AB, "unit", lambda p: _above_xs(p) and _unit(p["z"]), _eval_turan_26),
    InequalityEntry(InequalityId.EXPLB_27, "suspect", "W̌_{α,β}(z) >= exp(-Γ(β)z/Γ(β+α))/Γ(β)",
                    _AB, "unit", lambda p: _above_xs(p) and _unit(p["z"]), _eval_explb_27),
    InequalityEntry(InequalityId.UB_29, "suspect",
                    "W_{α,β}(z) <= Γ(2α)/Γ(β)^2 (exp(Γ(α)z/Γ(2α)) - 1)/z", _AB, "positive",
                    lambda p: p["alpha"] > 0 and p["beta"] - p["alpha"] >= 1 and p["z"] > 0,
                    _eval_ub_29),
    InequalityEntry(InequalityId.PROD_210, "asserted",
                    "W_{α,β+1}W_{α,β-1} <= Γ(β-α)/(Γ(β-α-1)Γ(β-α+1)) W_{α,α+1}W_{α,β}", _AB,
                    "positive",
                    lambda p: p["alpha"] > 0 and p["beta"] - p["alpha"] >= 2 and p["z"] > 0,
                    _eval_prod_210),
    InequalityEntry(InequalityId.DOUBLING_211, "asserted", "2W_{α,α+3}(z) <= W_{α,α+2}(z)",
                    ("alpha",), "positive", lambda p: p["alpha"] > 0 and p["z"] > 0,
                    _eval_doubling_211),
    InequalityEntry(InequalityId.TS_FW_ALPHA, "asserted",
                    "ψ0 e^{ψ1|z|/ψ0} <= 1Ψ1[(α,α);(β,α)|z] <= ψ0 - (1 - e^{|z|})ψ1", _AB, "real",
                    _ts_alpha_ok, _eval_ts_fw_alpha),
    InequalityEntry(InequalityId.UB_6666, "asserted",
                    "W_{α,β}(z) <= 1/Γ(β) - Γ(2α)(1 - exp(Γ(α)z/Γ(2α)))/(Γ(α)Γ(β+α))", _AB,
                    "positive", lambda p: _ordered(p) and p["z"] > 0, _eval_ub_6666),
    InequalityEntry(InequalityId.LB_777, "suspect", "W̌_{α,β}(z) >= exp(+Γ(β)z/Γ(α+β))/Γ(β)",
                    _AB, "unit", lambda p: _ordered(p) and _unit(p["z"]), _eval_lb_777),
    InequalityEntry(InequalityId.SUPERADD_Z0, "suspect",
                    "W̌^{γ,σ}(x+y) >= W̌^{γ,σ}(x)W̌^{γ,σ}(y)/Γ(β)", _ABGS, "pairs",
                    lambda p: _above_xs(p) and _kernel(p) and _pair_ok(p), _eval_superadd_z0),
    InequalityEntry(InequalityId.TURAN_Z1, "suspect",
                    "(γ+1)/(σ+1) W̌^{γ+2,σ+2}_{α,β+2α}W̌^{γ,σ}_{α,β} >= (γ/σ)(W̌^{γ+1,σ+1}_{α,β+α})^2",
                    _ABGS, "unit", lambda p: _above_xs(p) and _kernel(p) and _unit(p["z"]),
                    _eval_turan_z1),
    InequalityEntry(InequalityId.EXPLB_Z2, "suspect",
                    "W̌^{γ,σ}(z) >= exp(-γΓ(β)z/(σΓ(β+α)))/Γ(β)", _ABGS, "unit",
                    lambda p: _above_xs(p) and _kernel(p) and _unit(p["z"]), _eval_explb_z2),
    InequalityEntry(InequalityId.TURAN_SIGMA_Z3, "asserted",
                    "W^{γ,σ}W^{γ,σ+2} >= (W^{γ,σ+1})^2", _ABGS, "positive",
                    lambda p: _all_positive(p, _ABGS + ("z",)), _eval_turan_sigma_z3),
    InequalityEntry(InequalityId.TURAN_GAMMA, "asserted",
                    "W^{γ,σ}W^{γ+2,σ} >= γ/(γ+1) (W^{γ+1,σ})^2", _ABGS, "positive",
                    lambda p: _all_positive(p, _ABGS + ("z",)), _eval_turan_gamma),
    InequalityEntry(InequalityId.TS_FW_GS, "asserted",
                    "ψ0 e^{(γ/σ)|z|} <= 1Ψ1[(γ,1);(σ,1)|z] <= ψ0(1 - (γ/σ)(1 - e^{|z|}))",
                    ("gamma", "sigma"), "real", _ts_gs_ok, _eval_ts_fw_gs),
    InequalityEntry(InequalityId.UB_88, "asserted",
                    "W^{γ,σ}(z) <= (1/Γ(β))[1 - (γ/σ)(1 - exp(Γ(β)z/Γ(β+α)))]", _ABGS, "positive",
                    lambda p: _ordered(p) and _kernel(p) and p["z"] > 0, _eval_ub_88),
    InequalityEntry(InequalityId.LB_888, "suspect",
                    "W̌^{γ,σ}(z) >= exp(+γΓ(β)z/(σΓ(β+α)))/Γ(β)", _ABGS, "unit",
                    lambda p: _ordered(p) and _kernel(p) and _unit(p["z"]), _eval_lb_888),
    InequalityEntry(InequalityId.UB_1010, "asserted",
                    "W^{γ,σ}(z) <= (Γ(β-α)W_{α,β-α}(z) - 1)/(Γ(β-α)z)", _ABGS, "positive",
                    lambda p: (0 < p["gamma"] <= 1 and p["sigma"] - p["gamma"] >= 1
                               and _ordered(p) and p["z"] > 0),
                    _eval_ub_1010),
    InequalityEntry(InequalityId.IDENT_1010, "asserted",
                    "(Γ(β-α)W_{α,β-α}(z) - 1)/(Γ(β-α)z) == W^{1,2}_{α,β}(z)", _AB, "positive",
                    lambda p: _ordered(p) and p["z"] > 0, _eval_ident_1010),
    InequalityEntry(InequalityId.PROD_11111, "suspect",
                    "W^{γ,σ+1}W^{γ,σ-1} <= K(γ,σ) W^{1,2}W^{γ,σ}", _ABGS, "positive",
                    lambda p: 0 < p["gamma"] <= 1 and p["sigma"] - p["gamma"] >= 2 and p["z"] > 0,
                    _eval_prod_11111),
    InequalityEntry(InequalityId.ML_SUPERADD, "suspect",
                    "Ě(x+y) >= Γ(σ)/Γ(β) Ě(x)Ě(y), E = E_{α,β;1,σ}", _ABS, "pairs",
                    lambda p: _above_xs(p) and p["sigma"] > 1 and _pair_ok(p), _eval_ml_superadd,
                    sigma_base="one"),
    InequalityEntry(InequalityId.ML_TURAN_Z, "suspect",
                    "2/(σ+1) Ě_{α,β+2α;3,σ+2}Ě_{α,β;1,σ} >= (1/σ)(Ě_{α,β+α;2,σ+1})^2", _ABS, "unit",
                    lambda p: _above_xs(p) and p["sigma"] > 1 and _unit(p["z"]), _eval_ml_turan_z,
                    sigma_base="one"),
    InequalityEntry(InequalityId.ML_EXPLB, "suspect",
                    "Ě_{α,β;1,σ}(z) >= exp(+Γ(β)z/(σΓ(β+α)))/Γ(σ)", _ABS, "unit",
                    lambda p: _above_xs(p) and p["sigma"] > 1 and _unit(p["z"]), _eval_ml_explb,
                    sigma_base="one"),
    InequalityEntry(InequalityId.ML_TURAN_SIGMA, "asserted",
                    "E_{σ+2}E_{σ} >= σ/(σ+1) (E_{σ+1})^2, E_s = E_{α,β;1,s}", _ABS, "positive",
                    lambda p: _all_positive(p, _ABS + ("z",)), _eval_ml_turan_sigma,
                    sigma_base="one"),
    InequalityEntry(InequalityId.ML_UB, "suspect",
                    "E_{α,β;1,σ}(z) <= Γ(σ)/Γ(β)[1 - (1/σ)(1 - exp(Γ(β)z/Γ(β+α)))]", _ABS,
                    "positive", lambda p: _ordered(p) and p["sigma"] > 1 and p["z"] > 0,
                    _eval_ml_ub, sigma_base="one"),
    InequalityEntry(InequalityId.ML_PROD, "asserted",
                    "E_{σ+1}E_{σ-1} <= Γ(σ-1)/(Γ(σ)Γ(σ-2)) E_{α,β;1,2}E_{σ}", _ABS, "positive",
                    lambda p: _ordered(p) and p["sigma"] >= 3 and p["z"] > 0, _eval_ml_prod,
                    sigma_base="one"),
]

CATALOG: Dict[InequalityId, InequalityEntry] = {e.id: e for e in _ENTRIES}
TWO_SIDED_IDS = (InequalityId.TS_FW_ALPHA, InequalityId.TS_FW_GS)


def resolve_ids(names: Optional[Sequence[str]] = None) -> List[InequalityId]:
    """Catalog ids for the given names (all ids when None)."""
    if names is None:
        return list(CATALOG)
    ids = []
    for name in names:
        try:
            ids.append(InequalityId(str(name).strip()))
        except ValueError:
            raise ConfigError(f"unknown inequality id {name!r}; known: {', '.join(CATALOG)}")
    return ids


# =============================================================================
# RECORDS
# =============================================================================

@dataclass(frozen=True)
class AuditRecord:
    """Signed margin of one claim at one point."""
    id: str
    point: Point
    lhs: Optional[float]
    rhs: Optional[float]
    margin: Optional[float]
    raw_gap: Optional[float]
    status: str
    expected: str
    segment: str = "main"
    detail: str = ""

    def sort_key(self) -> Tuple:
        return (self.id, tuple(self.point[k] for k in POINT_KEYS if k in self.point))

    def to_dict(self) -> Dict:
        return {name: getattr(self, name) for name in RECORD_FIELDS}


def signed_margin(larger: float, smaller: float) -> float:
    """(claimed-larger - claimed-smaller) / max(1, |larger|, |smaller|)."""
    return (larger - smaller) / max(1.0, abs(larger), abs(smaller))


def _segment(entry: InequalityEntry, point: Point) -> str:
    if entry.id in TWO_SIDED_IDS and point.get("z", 0.0) < 0:
        return "negative_z"
    return "main"


def _normalize_point(point: Point) -> Point:
    unknown = set(point) - set(POINT_KEYS)
    if unknown:
        raise ConfigError(f"unknown point keys {sorted(unknown)}")
    return {k: float(point[k]) for k in POINT_KEYS if k in point}


def evaluate_inequality(id: str, point: Point) -> AuditRecord:
    """
    Evaluate one catalog entry at one point.

    Hypothesis failures give status hypothesis_not_met; evaluation failures give
    eval_error with the cause in `detail`. Neither raises.
    """
    entry = CATALOG[resolve_ids([id])[0]]
    point = _normalize_point(point)
    base = dict(id=entry.id.value, point=point, expected=entry.expected,
                segment=_segment(entry, point))
    try:
        admitted = entry.hypothesis(point)
    except KeyError as e:
        raise ConfigError(f"{entry.id.value} needs parameter {e}")
    except (WrightKitError, ArithmeticError, ValueError) as e:
        admitted, base["detail"] = False, f"{type(e).__name__}: {e}"
    if not admitted:
        return AuditRecord(lhs=None, rhs=None, margin=None, raw_gap=None,
                           status="hypothesis_not_met", **base)

    try:
        lhs, rhs, relation, detail = entry.evaluate(point)
    except (WrightKitError, ArithmeticError, ValueError) as e:
        return AuditRecord(lhs=None, rhs=None, margin=None, raw_gap=None, status="eval_error",
                           detail=f"{type(e).__name__}: {e}", **base)
    if not (math.isfinite(lhs) and math.isfinite(rhs)):
        return AuditRecord(lhs=None, rhs=None, margin=None, raw_gap=None, status="eval_error",
                           detail=f"non-finite side: lhs={lhs}, rhs={rhs}", **base)

    if relation == "==":
        raw_gap = -abs(lhs - rhs)
        margin = raw_gap / max(1.0, abs(lhs), abs(rhs))
        tolerance = config.IDENTITY_TOL
    else:
        larger, smaller = (lhs, rhs) if relation == ">=" else (rhs, lhs)
        raw_gap = larger - smaller
        margin = signed_margin(larger, smaller)
        tolerance = config.AUDIT_SLACK

    status = "holds" if margin >= -tolerance else "violated"
    if status == "holds" and margin < 0:
        detail = (detail + "; " if detail else "") + "within roundoff"
    return AuditRecord(lhs=lhs, rhs=rhs, margin=margin, raw_gap=raw_gap, status=status,
                       detail=detail, **base)


# =============================================================================
# GRID
# =============================================================================

@dataclass(frozen=True)
class GridSpec:
    """
    Cartesian sweep: β = α + beta_offset, σ = γ + sigma_offset (or 1 + offset
    for the Mittag-Leffler entries), z per entry domain, (x, y) pairs for the
    super-additivity entries.
    """
    alpha: Tuple[float, ...]
    beta_offset: Tuple[float, ...]
    gamma: Tuple[float, ...]
    sigma_offset: Tuple[float, ...]
    z: Tuple[float, ...]
    z_extra: Tuple[float, ...] = ()
    z_negative: Tuple[float, ...] = ()
    pairs: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        for name in ("alpha", "beta_offset", "gamma", "sigma_offset", "z", "z_extra", "z_negative"):
            try:
                values = tuple(float(v) for v in getattr(self, name))
            except (TypeError, ValueError):
                raise ConfigError(f"grid axis {name} must be a list of numbers")
            if not all(math.isfinite(v) for v in values):
                raise ConfigError(f"grid axis {name} has non-finite values: {values}")
            object.__setattr__(self, name, values)
        for name in ("alpha", "beta_offset", "gamma", "sigma_offset", "z"):
            if not getattr(self, name):
                raise ConfigError(f"grid axis {name} is empty")
        pairs = []
        for pair in self.pairs:
            if len(pair) != 2 or not all(math.isfinite(float(v)) for v in pair):
                raise ConfigError(f"grid pair must be two finite numbers, got {pair!r}")
            pairs.append((float(pair[0]), float(pair[1])))
        object.__setattr__(self, "pairs", tuple(pairs))

    @classmethod
    def default(cls) -> "GridSpec":
        g = config.DEFAULT_GRID
        return cls(alpha=g["alpha"], beta_offset=g["beta_offset"], gamma=g["gamma"],
                   sigma_offset=g["sigma_offset"], z=g["z"], z_extra=g["z_extra"],
                   z_negative=g["z_negative"], pairs=config.SUPERADD_PAIRS)

    def z_values(self, domain: str) -> Tuple[float, ...]:
        if domain == "unit":
            return self.z
        if domain == "positive":
            return self.z + self.z_extra
        return self.z_negative + self.z + self.z_extra

    def points(self, entry: InequalityEntry) -> List[Point]:
        """All sweep points of one entry, before hypothesis gating."""
        axes = entry.axes
        alphas = self.alpha if "alpha" in axes else (None,)
        gammas = self.gamma if "gamma" in axes else (None,)
        out = []
        for a in alphas:
            betas = tuple(a + off for off in self.beta_offset) if "beta" in axes else (None,)
            for b in betas:
                for g in gammas:
                    base = g if entry.sigma_base == "gamma" else 1.0
                    sigmas = (tuple(base + off for off in self.sigma_offset)
                              if "sigma" in axes else (None,))
                    for s in sigmas:
                        params = {"alpha": a, "beta": b, "gamma": g, "sigma": s}
                        params = {k: v for k, v in params.items() if v is not None}
                        if entry.z_domain == "pairs":
                            out.extend(dict(params, x=x, y=y) for x, y in self.pairs)
                        else:
                            out.extend(dict(params, z=z) for z in self.z_values(entry.z_domain))
        return out


# =============================================================================
# SWEEP AND REPORT
# =============================================================================

@dataclass
class AuditReport:
    records: List[AuditRecord]
    summary: List[Dict] = field(default_factory=list)

    @property
    def asserted_violations(self) -> List[AuditRecord]:
        """Violations that break the exit-code contract."""
        return [r for r in self.records
                if r.status == "violated" and r.expected == "asserted" and r.segment == "main"]

    def violations(self, id: Optional[str] = None) -> List[AuditRecord]:
        return [r for r in self.records
                if r.status == "violated" and (id is None or r.id == id)]

    def summary_frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.summary, columns=SUMMARY_FIELDS)


def _format_point(point: Point) -> str:
    return ";".join(f"{k}={v!r}" for k, v in point.items())


def summarize(records: Sequence[AuditRecord]) -> List[Dict]:
    """Per (id, segment) counts and worst margin; rows ordered like the records."""
    rows: Dict[Tuple[str, str], Dict] = {}
    for r in records:
        row = rows.setdefault((r.id, r.segment), {
            "id": r.id, "segment": r.segment, "expected": r.expected, "points": 0,
            **{s: 0 for s in STATUSES}, "worst_margin": None, "worst_point": "",
        })
        row["points"] += 1
        row[r.status] += 1
        if r.margin is not None and (row["worst_margin"] is None or r.margin < row["worst_margin"]):
            row["worst_margin"], row["worst_point"] = r.margin, _format_point(r.point)
    return [{k: row[k] for k in SUMMARY_FIELDS} for row in rows.values()]


def audit_sweep(ids: Optional[Sequence[str]] = None, grid: Optional[GridSpec] = None,
                n_jobs: Optional[int] = None, verbose: bool = False) -> AuditReport:
    """
    One record per (id, grid point), sorted by id then point.

    Args:
        ids: catalog ids (all when None)
        grid: sweep grid (GridSpec.default() when None)
        n_jobs: joblib workers (config.n_jobs() when None); output is identical for any value
        verbose: joblib progress on stderr
    """
    entries = [CATALOG[i] for i in resolve_ids(ids)]
    grid = grid or GridSpec.default()
    tasks = [(e.id.value, p) for e in entries for p in grid.points(e)]
    if not tasks:
        raise ConfigError("grid produces no points for the selected ids")
    n_jobs = config.n_jobs() if n_jobs is None else n_jobs
    records = Parallel(n_jobs=n_jobs, verbose=10 if verbose else 0)(
        delayed(evaluate_inequality)(i, p) for i, p in tasks)
    records.sort(key=AuditRecord.sort_key)
    return AuditReport(records=records, summary=summarize(records))


def metadata_header(kind: str) -> Dict:
    return {"_meta": {"generator": "wrightkit", "kind": kind,
                      "created": datetime.now().isoformat(timespec="seconds")}}


def write_records_jsonl(report: AuditReport, path: Path, header: bool = True) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        if header:
            f.write(json.dumps(metadata_header("audit_records")) + "\n")
        for r in report.records:
            f.write(json.dumps(r.to_dict(), ensure_ascii=False) + "\n")
    return path


def write_summary_csv(report: AuditReport, path: Path, header: bool = True) -> Path:
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as f:
        if header:
            f.write(f"# {json.dumps(metadata_header('audit_summary'))}\n")
        report.summary_frame().to_csv(f, index=False, float_format=config.FLOAT_FORMAT,
                                      lineterminator="\n")
    return path


def read_records_jsonl(path: Path) -> List[Dict]:
    rows = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            obj = json.loads(line)
            if "_meta" not in obj:
                rows.append(obj)
    return rows


class AuditRunner:
    """Run audit sweeps, write the report files and print a summary to stderr."""

    RECORDS_FILE = "records.jsonl"
    SUMMARY_FILE = "summary.csv"

    def __init__(self, output_dir: str = "audit_results", verbose: bool = False,
                 n_jobs: Optional[int] = None, header: bool = True):
        self.output_dir = Path(output_dir)
        self.verbose = verbose
        self.n_jobs = n_jobs
        self.header = header

    def run(self, ids: Optional[Sequence[str]] = None,
            grid: Optional[GridSpec] = None) -> AuditReport:
        report = audit_sweep(ids, grid, n_jobs=self.n_jobs, verbose=self.verbose)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        write_records_jsonl(report, self.output_dir / self.RECORDS_FILE, self.header)
        write_summary_csv(report, self.output_dir / self.SUMMARY_FILE, self.header)
        if self.verbose:
            self.print_summary(report)
        return report

    def print_summary(self, report: AuditReport) -> None:
        err = sys.stderr
        print("\n" + "=" * 70, file=err)
        print("  INEQUALITY AUDIT SUMMARY", file=err)
        print("=" * 70, file=err)
        print(f"{'id':<16s} {'segment':<11s} {'class':<9s} {'points':>6s} {'holds':>6s} "
              f"{'viol':>5s} {'worst':>12s}", file=err)
        print("-" * 70, file=err)
        for row in report.summary:
            if row["violated"] == 0:
                glyph = "✅"
            elif row["expected"] == "asserted" and row["segment"] == "main":
                glyph = "❌"
            else:
                glyph = "⚠️ "
            worst = "-" if row["worst_margin"] is None else f"{row['worst_margin']:.3e}"
            print(f"{row['id']:<16s} {row['segment']:<11s} {row['expected']:<9s} "
                  f"{row['points']:>6d} {row['holds']:>6d} {row['violated']:>5d} "
                  f"{worst:>12s} {glyph}", file=err)
        n_bad = len(report.asserted_violations)
        print("-" * 70, file=err)
        if n_bad:
            print(f"❌ {n_bad} violation(s) of asserted inequalities", file=err)
        else:
            print("✅ No asserted inequality violated", file=err)
        print(f"Results saved to: {self.output_dir}/", file=err)


__all__ = [
    "InequalityId", "InequalityEntry", "CATALOG", "SeriesMoments", "series_moments",
    "moment_conditions_hold",
    "two_sided_bounds", "AuditRecord", "AuditReport", "GridSpec", "signed_margin",
    "evaluate_inequality", "audit_sweep", "summarize", "write_records_jsonl", "write_summary_csv",
    "read_records_jsonl", "resolve_ids", "AuditRunner", "RECORD_FIELDS", "SUMMARY_FIELDS",
]
