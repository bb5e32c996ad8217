"""Tests for gamma_core: Gamma-family primitives and the Gamma-minimum abscissa."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import config
from errors import DomainError, GammaOverflowError, PoleError
from gamma_core import (beta, digamma, find_gamma_min, gamma, gamma_ratio, is_pole, log_abs_gamma,
                        log_abs_rgamma, log_gamma, pochhammer, rgamma, x_star)

EULER_GAMMA = 0.5772156649015329


class TestGamma:

    def test_factorial(self):
        assert gamma(5) == pytest.approx(24.0, rel=1e-14)

    def test_half(self):
        assert gamma(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)

    def test_near_minimum(self):
        assert gamma(1.461632144) == pytest.approx(0.885603, abs=1e-6)

    @pytest.mark.parametrize("x", [0.0, -1.0, -2.0, -10.0])
    def test_poles_raise(self, x):
        with pytest.raises(PoleError):
            gamma(x)

    def test_negative_non_integer_uses_reflection(self):
        assert gamma(-0.5) == pytest.approx(-2.0 * math.sqrt(math.pi), rel=1e-13)

    def test_overflow_threshold(self):
        assert math.isfinite(gamma(171.6))
        with pytest.raises(GammaOverflowError):
            gamma(config.GAMMA_OVERFLOW_X + 0.01)

    def test_non_finite_rejected(self):
        with pytest.raises(DomainError):
            gamma(float("nan"))

    @given(st.floats(min_value=0.1, max_value=50.0))
    @settings(max_examples=200)
    def test_recurrence(self, x):
        assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)

    @given(st.floats(min_value=0.01, max_value=0.99))
    @settings(max_examples=200)
    def test_reflection(self, x):
        assert gamma(x) * gamma(1 - x) * math.sin(math.pi * x) / math.pi == pytest.approx(1.0, abs=1e-10)


class TestLogGammaDigamma:

    @pytest.mark.parametrize("x,expected", [(1.0, 0.0), (2.0, 0.0), (10.0, math.log(362880.0))])
    def test_log_gamma_values(self, x, expected):
        assert log_gamma(x) == pytest.approx(expected, abs=1e-13)

    def test_log_gamma_domain(self):
        with pytest.raises(DomainError):
            log_gamma(0.0)

    def test_log_gamma_matches_gamma(self):
        for x in np.linspace(0.1, 150.0, 40):
            assert math.exp(log_gamma(x)) == pytest.approx(gamma(x), rel=1e-12)

    def test_digamma_at_one(self):
        assert digamma(1.0) == pytest.approx(-EULER_GAMMA, abs=1e-15)

    def test_digamma_recurrence(self):
        assert digamma(2.0) == pytest.approx(digamma(1.0) + 1.0, abs=1e-15)

    def test_digamma_matches_log_gamma_difference(self):
        h = 1e-5
        for x in (0.5, 1.5, 3.0, 7.25):
            fd = (log_gamma(x + h) - log_gamma(x - h)) / (2 * h)
            assert digamma(x) == pytest.approx(fd, abs=1e-8)

    def test_digamma_domain(self):
        with pytest.raises(DomainError):
            digamma(-0.5)


class TestBetaPochhammer:

    @pytest.mark.parametrize("x,y,expected", [(1.0, 1.0, 1.0), (2.0, 3.0, 1.0 / 12.0),
                                              (0.5, 0.5, math.pi)])
    def test_beta_values(self, x, y, expected):
        assert beta(x, y) == pytest.approx(expected, rel=1e-13)

    def test_beta_symmetric(self):
        assert beta(0.3, 4.7) == beta(4.7, 0.3)

    def test_beta_domain(self):
        with pytest.raises(DomainError):
            beta(0.0, 1.0)

    def test_pochhammer_values(self):
        assert pochhammer(1.0, 5) == 120.0
        assert pochhammer(0.7, 0) == 1.0
        assert pochhammer(2.5, 3) == pytest.approx(39.375, rel=1e-15)

    def test_pochhammer_step(self):
        for n in range(8):
            assert pochhammer(1.3, n + 1) == pochhammer(1.3, n) * (1.3 + n)

    def test_pochhammer_matches_gamma_ratio(self):
        assert pochhammer(0.4, 6) == pytest.approx(gamma(6.4) / gamma(0.4), rel=1e-13)

    def test_pochhammer_pole(self):
        with pytest.raises(PoleError):
            pochhammer(-2.0, 4)

    def test_pochhammer_rejects_fractional_n(self):
        with pytest.raises(DomainError):
            pochhammer(1.0, 2.5)


class TestSignedLogs:

    def test_log_abs_gamma_negative(self):
        value, sign = log_abs_gamma(-0.5)
        assert sign == -1.0
        assert math.exp(value) == pytest.approx(2.0 * math.sqrt(math.pi), rel=1e-13)

    def test_rgamma_zero_at_poles(self):
        assert rgamma(-3.0) == 0.0
        assert log_abs_rgamma(0.0) == (-math.inf, 0.0)
        assert gamma_ratio(2.0, -1.0) == 0.0

    def test_gamma_ratio_large_arguments(self):
        # Γ(200.5)/Γ(200) ~ sqrt(200), both factors overflow a double on their own
        assert gamma_ratio(200.5, 200.0) == pytest.approx(math.sqrt(200.0), rel=1e-3)

    def test_is_pole(self):
        assert is_pole(0.0) and is_pole(-4.0)
        assert not is_pole(1.0) and not is_pole(-0.5)


class TestGammaMinimum:

    def test_reference_value(self):
        assert abs(x_star() - config.X_STAR_REFERENCE) <= 1e-6

    def test_constant_fields(self):
        c = find_gamma_min()
        assert c.gamma_at_x_star == pytest.approx(0.885603, abs=1e-6)
        assert abs(c.digamma_at_x_star) <= 1e-8
        assert c.golden_section_x == pytest.approx(c.x_star, abs=1e-6)

    def test_minimality(self):
        c = find_gamma_min()
        assert c.gamma_at_x_star < gamma(1.4)
        assert c.gamma_at_x_star < gamma(1.5)
        for h in (1e-3, 1e-2, 1e-1):
            assert gamma(c.x_star - h) >= c.gamma_at_x_star
            assert gamma(c.x_star + h) >= c.gamma_at_x_star

    def test_cached(self):
        assert find_gamma_min() is find_gamma_min()
