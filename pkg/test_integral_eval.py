"""Tests for integral_eval: quadrature over the integral representations."""

import math

import numpy as np
import pytest

from errors import DomainError
from gamma_core import beta as beta_fn
from gamma_core import rgamma
from integral_eval import (QuadratureSpec, gen_wright_via_beta_kernel,
                           gen_wright_via_pochhammer_kernel, jacobi_nodes, substitution_exponents,
                           wright_via_integral)
from series_eval import GenWrightParams, WrightParams, gen_wright, wright


def agree(a, b, tol=1e-8):
    return abs(a.value - b.value) <= max(tol, 3.0 * (a.abs_error_estimate + b.abs_error_estimate))


class TestQuadratureSpec:

    def test_defaults(self):
        q = QuadratureSpec()
        assert q.node_count == 8
        assert q.rule == "jacobi_weighted"

    @pytest.mark.parametrize("kwargs", [{"node_count": 4}, {"node_count": 8.5},
                                        {"target_abs_tol": 0.0}, {"rule": "simpson"}])
    def test_invalid(self, kwargs):
        with pytest.raises(DomainError):
            QuadratureSpec(**kwargs)


class TestJacobiNodes:

    def test_weights_integrate_the_weight(self):
        v, w = jacobi_nodes(8, 0.5, -0.5)
        assert float(np.sum(w)) == pytest.approx(beta_fn(0.5, 1.5), rel=1e-13)
        assert np.all((v > 0) & (v < 1))

    def test_exact_for_polynomials(self):
        v, w = jacobi_nodes(8, 1.0, 2.0)
        # ∫ (1-v) v^2 v^3 dv = B(6, 2)
        assert float(np.dot(w, v ** 3)) == pytest.approx(beta_fn(6.0, 2.0), rel=1e-13)

    def test_read_only(self):
        v, w = jacobi_nodes(16, 0.0, 0.0)
        assert not v.flags.writeable
        assert not w.flags.writeable


class TestSubstitution:

    @pytest.mark.parametrize("alpha,expected", [(1.0, (1.0, 1)), (0.5, (1.0, 2)), (1.5, (3.0, 2)),
                                                (2.0, (2.0, 1)), (0.75, (3.0, 4))])
    def test_rational_alpha(self, alpha, expected):
        assert substitution_exponents(alpha) == expected

    def test_power_and_irrational(self):
        assert substitution_exponents(1.5, "power") == (1.5, 1)
        assert substitution_exponents(math.sqrt(2.0)) == (math.sqrt(2.0), 1)

    def test_unknown(self):
        with pytest.raises(DomainError):
            substitution_exponents(1.0, "cubic")


class TestWrightViaIntegral:

    def test_matches_series(self):
        p = WrightParams(1.0, 2.0)
        ev = wright_via_integral(p, 1.0)
        assert ev.method == "integral"
        assert agree(ev, wright(p, 1.0))

    def test_zero_argument(self):
        ev = wright_via_integral(WrightParams(1.5, 3.0), 0.0)
        assert ev.value == pytest.approx(0.5, abs=1e-10)

    def test_unit_gap_reduces_to_mean(self):
        # β = α + 1: W_{α,α+1}(z) = (1/α) ∫ W_{α,α}(z t) dt
        p = WrightParams(2.0, 3.0)
        ev = wright_via_integral(p, 0.8)
        assert agree(ev, wright(p, 0.8))

    @pytest.mark.parametrize("alpha,beta,z", [(0.5, 1.0, 0.5), (0.5, 2.5, -0.9), (1.5, 2.0, 5.0),
                                              (2.0, 2.5, 2.0)])
    def test_grid_points(self, alpha, beta, z):
        p = WrightParams(alpha, beta)
        assert agree(wright_via_integral(p, z), wright(p, z))

    def test_power_substitution_consistency(self):
        p = WrightParams(1.5, 3.0)
        auto = wright_via_integral(p, 0.5, substitution="auto")
        power = wright_via_integral(p, 0.5, substitution="power")
        assert auto.value == pytest.approx(power.value, abs=1e-10)

    def test_adaptive_rule(self):
        p = WrightParams(1.0, 2.0)
        ev = wright_via_integral(p, 1.0, QuadratureSpec(rule="adaptive_subdivision"))
        assert agree(ev, wright(p, 1.0))

    def test_refinement_estimate(self):
        p = WrightParams(0.5, 1.7)
        coarse = wright_via_integral(p, 1.0, QuadratureSpec(target_abs_tol=1e-6))
        fine = wright_via_integral(p, 1.0, QuadratureSpec(target_abs_tol=1e-12))
        assert fine.abs_error_estimate <= 2.0 * max(coarse.abs_error_estimate, 1e-16)

    @pytest.mark.parametrize("substitution", ["auto", "power"])
    def test_doubling_differences_do_not_grow(self, substitution):
        # one doubling per call: the estimate is |Q_2n - Q_n| plus a roundoff floor
        p = WrightParams(1.5, 3.0)
        estimates, values = [], []
        for n in (8, 16, 32, 64):
            ev = wright_via_integral(p, 0.5, QuadratureSpec(node_count=n, target_abs_tol=1.0),
                                     substitution=substitution)
            assert ev.terms_used == 3 * n
            estimates.append(ev.abs_error_estimate)
            values.append(ev.value)
        roundoff = 64.0 * np.finfo(float).eps * max(abs(v) for v in values)
        for coarse, fine in zip(estimates, estimates[1:]):
            assert fine <= coarse + roundoff

    @pytest.mark.parametrize("alpha,beta", [(1.0, 1.0), (1.0, 0.5), (0.0, 1.0), (-0.5, 1.0)])
    def test_domain(self, alpha, beta):
        with pytest.raises(DomainError):
            wright_via_integral(WrightParams(alpha, beta), 0.5)


class TestGenWrightIntegrals:

    def test_beta_kernel_matches_series(self):
        p = GenWrightParams(1.0, 2.0, 1.0, 2.0)
        assert agree(gen_wright_via_beta_kernel(p, 1.0), gen_wright(p, 1.0))

    def test_beta_kernel_zero_argument(self):
        p = GenWrightParams(1.5, 2.5, 0.5, 2.0)
        assert gen_wright_via_beta_kernel(p, 0.0).value == pytest.approx(rgamma(2.5), abs=1e-10)

    def test_beta_kernel_closed_form(self):
        # γ = 1, σ = 2: flat kernel, (W_{α,β-α}(z) - 1/Γ(β-α)) / z
        alpha, beta, z = 1.0, 2.5, 0.7
        ev = gen_wright_via_beta_kernel(GenWrightParams(alpha, beta, 1.0, 2.0), z)
        closed = (wright(WrightParams(alpha, beta - alpha), z).value - rgamma(beta - alpha)) / z
        assert ev.value == pytest.approx(closed, abs=1e-9)

    @pytest.mark.parametrize("gamma,sigma", [(0.5, 1.5), (0.5, 2.5), (1.0, 3.0)])
    def test_beta_kernel_singular_weights(self, gamma, sigma):
        p = GenWrightParams(0.5, 1.5, gamma, sigma)
        for z in (-0.5, 2.0):
            assert agree(gen_wright_via_beta_kernel(p, z), gen_wright(p, z))

    @pytest.mark.parametrize("gamma,sigma", [(0.0, 1.0), (1.0, 1.0), (2.0, 1.0)])
    def test_beta_kernel_domain(self, gamma, sigma):
        with pytest.raises(DomainError):
            gen_wright_via_beta_kernel(GenWrightParams(1.0, 2.0, gamma, sigma), 0.5)

    def test_pochhammer_kernel_matches_series(self):
        p = GenWrightParams(1.0, 2.5, 1.0, 3.0)
        assert agree(gen_wright_via_pochhammer_kernel(p, 0.5), gen_wright(p, 0.5))

    def test_pochhammer_kernel_collapses_to_wright(self):
        p = GenWrightParams(1.5, 2.5, 2.0, 2.0)
        pk = gen_wright_via_pochhammer_kernel(p, 0.9)
        direct = wright_via_integral(p.wright, 0.9)
        assert pk.value == pytest.approx(direct.value, abs=1e-12)

    def test_pochhammer_kernel_zero_argument(self):
        p = GenWrightParams(2.0, 3.5, 0.5, 1.5)
        assert gen_wright_via_pochhammer_kernel(p, 0.0).value == pytest.approx(rgamma(3.5), abs=1e-10)
