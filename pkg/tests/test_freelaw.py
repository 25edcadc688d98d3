"""Closed-form law checks against independent quadrature and sign oracles."""

import math

import numpy as np
import pytest
from helpers import chebyshev_semicircle_integral, gauss_legendre_integral

from wishmean.freelaw import (
    HarmLawParams,
    arith_norm_limit,
    condition_number_bound,
    critical_n,
    harm_cdf,
    harm_density,
    harm_mean_value,
    harm_norm_limit,
    mp_density,
    mp_edges,
)

GAMMAS = [0.1, 0.5, 0.9]
NS = [2.0, 3.0, 10.0]
GRID = [(g, n) for g in GAMMAS for n in NS]


def _harm_limit_direct(g: float, n: float) -> float:
    # Written out independently of the library for sign/oracle checks.
    return g - 2.0 * g / n + 2.0 * math.sqrt(g / n) * math.sqrt(1.0 - g + g / n)


def _arith_limit_direct(g: float, n: float) -> float:
    return g / n + 2.0 * math.sqrt(g / n)


class TestMpDensity:
    def test_point_value(self):
        # (b - 1)(1 - a) = 4 gamma - gamma^2 = 1.75 at gamma = 0.5
        assert mp_density(0.5, 1.0) == pytest.approx(math.sqrt(1.75) / math.pi, abs=1e-14)

    def test_outside_support(self):
        assert mp_density(0.5, 3.0) == 0.0
        assert mp_density(0.5, 0.05) == 0.0
        assert mp_density(0.5, -1.0) == 0.0

    def test_gamma_validation(self):
        for bad in [0.0, 1.0, -0.3, 1.7]:
            with pytest.raises(ValueError):
                mp_density(bad, 1.0)

    @pytest.mark.parametrize("gamma", GAMMAS)
    def test_normalization(self, gamma):
        lo, hi = mp_edges(gamma)
        total = chebyshev_semicircle_integral(
            lambda x: 1.0 / (2.0 * math.pi * gamma * x), lo, hi
        )
        assert total == pytest.approx(1.0, abs=1e-8)

    def test_vectorized(self):
        xs = np.linspace(0.0, 3.5, 50)
        vals = mp_density(0.5, xs)
        assert vals.shape == xs.shape
        assert np.all(vals >= 0.0)


class TestEdges:
    @pytest.mark.parametrize("gamma,n", GRID)
    def test_product_identity(self, gamma, n):
        p = HarmLawParams(gamma, n)
        assert p.e_minus * p.e_plus == pytest.approx((1.0 - gamma) ** 2, abs=1e-12)

    @pytest.mark.parametrize("gamma,n", GRID)
    def test_ordering(self, gamma, n):
        p = HarmLawParams(gamma, n)
        assert 0.0 <= p.e_minus < p.e_plus

    @pytest.mark.parametrize("gamma,n", GRID)
    def test_left_edge_carries_norm(self, gamma, n):
        # for n >= 2 the left edge dominates: max(1 - e-, e+ - 1) = 1 - e-
        p = HarmLawParams(gamma, n)
        assert max(1.0 - p.e_minus, p.e_plus - 1.0) == pytest.approx(1.0 - p.e_minus, abs=1e-15)

    def test_param_validation(self):
        with pytest.raises(ValueError):
            HarmLawParams(1.2, 2.0)
        with pytest.raises(ValueError):
            HarmLawParams(0.5, 0.5)


class TestHarmDensity:
    def test_point_value(self):
        # (e+ - 1)(1 - e-) = 0.75 at gamma = 0.5, n = 2
        p = HarmLawParams(0.5, 2.0)
        assert harm_density(p, 1.0) == pytest.approx(2.0 * math.sqrt(0.75) / math.pi, abs=1e-14)

    def test_outside_support(self):
        p = HarmLawParams(0.5, 2.0)
        assert harm_density(p, 0.05) == 0.0
        assert harm_density(p, 2.5) == 0.0

    @pytest.mark.parametrize("gamma,n", GRID)
    def test_normalization(self, gamma, n):
        p = HarmLawParams(gamma, n)
        total = chebyshev_semicircle_integral(
            lambda x: n / (2.0 * math.pi * gamma * x), p.e_minus, p.e_plus
        )
        assert total == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize("gamma,n", GRID)
    def test_first_moment(self, gamma, n):
        p = HarmLawParams(gamma, n)
        moment = chebyshev_semicircle_integral(
            lambda x: n / (2.0 * math.pi * gamma), p.e_minus, p.e_plus
        )
        assert moment == pytest.approx(1.0 - gamma + gamma / n, abs=1e-8)

    @pytest.mark.parametrize("gamma", GAMMAS)
    def test_n1_reduces_to_mp(self, gamma):
        p = HarmLawParams(gamma, 1.0)
        xs = np.linspace(0.0, 4.0, 400)
        np.testing.assert_allclose(harm_density(p, xs), mp_density(gamma, xs), atol=1e-12)


class TestHarmCdf:
    def test_endpoints(self):
        p = HarmLawParams(0.5, 2.0)
        assert harm_cdf(p, p.e_minus) == 0.0
        assert harm_cdf(p, p.e_plus) == 1.0
        assert harm_cdf(p, -1.0) == 0.0
        assert harm_cdf(p, 10.0) == 1.0

    def test_against_gauss_legendre_oracle(self):
        # Same theta substitution, but a fixed-order rule evaluated independently.
        p = HarmLawParams(0.5, 2.0)
        lo, hi = p.edges
        x = 1.0
        theta = 2.0 * math.asin(math.sqrt((x - lo) / (hi - lo)))
        coeff = p.n * (hi - lo) ** 2 / (8.0 * math.pi * p.gamma)
        oracle = gauss_legendre_integral(
            lambda t: coeff * math.sin(t) ** 2 / (lo + (hi - lo) * math.sin(t / 2.0) ** 2),
            0.0,
            theta,
            order=2000,
        )
        value = harm_cdf(p, x)
        assert 0.0 < value < 1.0
        assert value == pytest.approx(oracle, abs=1e-9)

    @pytest.mark.parametrize("gamma,n", [(0.1, 2.0), (0.5, 2.0), (0.9, 10.0)])
    def test_monotone(self, gamma, n):
        p = HarmLawParams(gamma, n)
        xs = np.linspace(p.e_minus - 0.1, p.e_plus + 0.1, 60)
        vals = [harm_cdf(p, x) for x in xs]
        assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))


class TestNormLimits:
    def test_harm_limit_value(self):
        assert harm_norm_limit(HarmLawParams(0.5, 2.0)) == pytest.approx(
            math.sqrt(0.75), abs=1e-14
        )

    def test_harm_limit_matches_n2_form(self):
        # n = 2 special form: sqrt(2 gamma) sqrt(1 - gamma/2)
        for g in GAMMAS:
            expected = math.sqrt(2.0 * g) * math.sqrt(1.0 - g / 2.0)
            assert harm_norm_limit(HarmLawParams(g, 2.0)) == pytest.approx(expected, abs=1e-14)

    @pytest.mark.parametrize("gamma,n", GRID)
    def test_harm_limit_equals_one_minus_left_edge(self, gamma, n):
        p = HarmLawParams(gamma, n)
        assert harm_norm_limit(p) == pytest.approx(1.0 - p.e_minus, abs=1e-12)

    def test_harm_limit_large_n(self):
        assert harm_norm_limit(HarmLawParams(0.5, 1e9)) == pytest.approx(0.5, abs=1e-4)

    def test_arith_limit_values(self):
        assert arith_norm_limit(0.5, 2.0) == pytest.approx(1.25, abs=1e-14)
        assert arith_norm_limit(0.5, 8.0) == pytest.approx(0.5625, abs=1e-14)

    def test_arith_limit_single_matrix(self):
        for g in GAMMAS:
            assert arith_norm_limit(g, 1.0) == pytest.approx(g + 2.0 * math.sqrt(g), abs=1e-14)


class TestCriticalN:
    def test_gamma_half(self):
        # independent sign oracle: the gap changes sign between n = 4 and 5
        assert _harm_limit_direct(0.5, 4.0) < _arith_limit_direct(0.5, 4.0)
        assert _harm_limit_direct(0.5, 5.0) > _arith_limit_direct(0.5, 5.0)
        result = critical_n(0.5)
        assert result is not None
        assert 4.0 < result.n_real < 5.0
        assert result.n_int == 4

    def test_gamma_09(self):
        assert _harm_limit_direct(0.9, 5.0) < _arith_limit_direct(0.9, 5.0)
        assert _harm_limit_direct(0.9, 6.0) > _arith_limit_direct(0.9, 6.0)
        result = critical_n(0.9)
        assert result.n_int == 5

    def test_root_is_a_sign_change(self):
        for g in GAMMAS:
            result = critical_n(g)
            gap = lambda n: _harm_limit_direct(g, n) - _arith_limit_direct(g, n)
            assert gap(result.n_real - 1e-6) < 0.0 < gap(result.n_real + 1e-6)

    def test_harmonic_wins_at_n2_for_all_gamma(self):
        for g in np.arange(0.05, 1.0, 0.05):
            assert _harm_limit_direct(g, 2.0) < _arith_limit_direct(g, 2.0)

    def test_single_sign_change_on_bracket(self):
        for g in GAMMAS:
            ns = np.logspace(math.log10(2.0), 6.0, 4000)
            gaps = np.array([_harm_limit_direct(g, n) - _arith_limit_direct(g, n) for n in ns])
            changes = np.sum(np.sign(gaps[:-1]) != np.sign(gaps[1:]))
            assert changes == 1

    def test_no_crossing_indicator(self):
        assert critical_n(0.5, n_max=3.0) is None

    def test_gamma_validation(self):
        with pytest.raises(ValueError):
            critical_n(1.5)


class TestConditionNumberBound:
    def test_printed_constant(self):
        assert condition_number_bound(0.5, 2.0) == pytest.approx(1.44337567, abs=1e-6)

    def test_rearranged_form(self):
        # (1 + (1/2) sqrt(gamma/2)) / sqrt(1 - gamma/2) at gamma = 0.5
        expected = (1.0 + 0.5 * math.sqrt(0.25)) / math.sqrt(0.75)
        assert condition_number_bound(0.5, 2.0) == pytest.approx(expected, abs=1e-12)

    def test_small_gamma_tends_to_one(self):
        assert condition_number_bound(1e-8, 2.0) == pytest.approx(1.0, abs=1e-3)

    def test_vacuous_beyond_crossover(self):
        with pytest.raises(ValueError):
            condition_number_bound(0.5, 8.0)


class TestHarmMeanValue:
    def test_value(self):
        assert harm_mean_value(HarmLawParams(0.5, 2.0)) == pytest.approx(0.75, abs=1e-14)

    @pytest.mark.parametrize("gamma,n", GRID)
    def test_simplified_form(self, gamma, n):
        assert harm_mean_value(HarmLawParams(gamma, n)) == pytest.approx(
            1.0 - gamma + gamma / n, abs=1e-12
        )

    def test_large_n_limit(self):
        for g in GAMMAS:
            assert harm_mean_value(HarmLawParams(g, 1e9)) == pytest.approx(1.0 - g, abs=1e-6)

    def test_matches_quadrature_moment(self):
        p = HarmLawParams(0.5, 2.0)
        moment = chebyshev_semicircle_integral(
            lambda x: p.n / (2.0 * math.pi * p.gamma), p.e_minus, p.e_plus
        )
        assert harm_mean_value(p) == pytest.approx(moment, abs=1e-8)
