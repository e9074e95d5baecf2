"""Bessel evaluation and zeros, cross-checked against closed forms, the
three-term recurrence, and scipy.special as an independent oracle."""

import math

import numpy as np
import pytest
from scipy.special import jv

from pittlab import bessel, quad


def envelope(t):
    return np.minimum(np.sqrt(2.0 / (math.pi * np.maximum(t, 1e-300))), 1.0)


class TestPointValues:
    def test_j0_at_zero(self):
        assert bessel.bessel_j(0.0, 0.0) == 1.0

    def test_positive_order_at_zero(self):
        assert bessel.bessel_j(1.5, 0.0) == 0.0

    def test_half_order_closed_form(self):
        # J_{1/2}(t) = sqrt(2/(pi t)) sin t; spot value at t=1
        got = bessel.bessel_j(0.5, 1.0)
        assert got == pytest.approx(math.sqrt(2 / math.pi) * math.sin(1.0),
                                    rel=1e-12)
        assert got == pytest.approx(0.671396707, abs=5e-10)

    def test_recurrence_spot(self):
        # J_0(2) + J_2(2) = (2*1/2) J_1(2)
        lhs = bessel.bessel_j(0.0, 2.0) + bessel.bessel_j(2.0, 2.0)
        rhs = (2 * 1.0 / 2.0) * bessel.bessel_j(1.0, 2.0)
        assert lhs == pytest.approx(rhs, abs=1e-12)

    def test_order_out_of_range(self):
        with pytest.raises(bessel.OrderOutOfRange):
            bessel.bessel_j(-0.75, 1.0)
        with pytest.raises(bessel.OrderOutOfRange):
            bessel.bessel_j(9.0, 1.0)


class TestAccuracyContract:
    @pytest.mark.parametrize("nu", [-0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 2.5,
                                    3.0, 4.0, 6.0])
    def test_against_scipy(self, nu):
        """<= 1e-10 relative away from zeros, <= 1e-12 absolute near them."""
        t = np.geomspace(1e-3, 1e4, 3000)
        ours = bessel.bessel_j(nu, t)
        ref = jv(nu, t)
        env = envelope(t)
        away = np.abs(ref) >= 0.01 * env
        rel = np.abs(ours - ref)[away] / np.abs(ref)[away]
        assert rel.max() < 1e-10
        assert np.abs(ours - ref).max() < 1e-12

    @pytest.mark.parametrize("nu", [0.0, 1.0, 2.2, 3.0, 4.0])
    def test_branch_overlap_agreement(self, nu):
        """Series and large-argument branches agree to 1e-10 around the
        crossover (relative to the oscillation envelope)."""
        from pittlab.bessel import _asymptotic, _crossover, _series_dd
        ts = _crossover(nu)
        band = np.linspace(ts - 3.0, ts + 3.0, 25)
        a = _series_dd(nu, band)
        b = _asymptotic(nu, band)
        assert np.max(np.abs(a - b) / envelope(band)) < 1e-10

    def test_recurrence_property(self):
        """|J_{nu-1} + J_{nu+1} - (2 nu/t) J_nu| <= 1e-9 (1+|J_nu|) on 50
        random (nu, t) in [0,5] x [0.5, 50].

        For nu < 1/2 the center of the three-term recurrence is shifted up
        one order so every factor stays in the supported order range.
        """
        rng = np.random.default_rng(7)
        for _ in range(50):
            nu = float(rng.uniform(0.0, 5.0))
            t = float(rng.uniform(0.5, 50.0))
            if nu < 0.5:
                nu += 1.0
            jm = bessel.bessel_j(nu - 1.0, t)
            j0 = bessel.bessel_j(nu, t)
            jp = bessel.bessel_j(nu + 1.0, t)
            resid = abs(jm + jp - (2 * nu / t) * j0)
            assert resid <= 1e-9 * (1.0 + abs(j0))

    @pytest.mark.parametrize("nu", [0.0, 0.5, 1.0])
    @pytest.mark.parametrize("t", [1.0, 5.0, 20.0])
    def test_lommel_identity(self, nu, t):
        """int_0^t r^{nu+1} J_nu(r) dr = t^{nu+1} J_{nu+1}(t), 1e-8 relative."""
        res = quad.integrate_finite(
            lambda r: np.asarray(r) ** (nu + 1) * bessel.bessel_j(nu, r),
            0.0, t, 1e-12)
        expect = t ** (nu + 1) * bessel.bessel_j(nu + 1.0, t)
        assert res.value == pytest.approx(expect, rel=1e-8, abs=1e-10)


class TestZeros:
    def test_half_order_zeros_are_multiples_of_pi(self):
        z = bessel.zeros(0.5, 3)
        np.testing.assert_allclose(z, [math.pi, 2 * math.pi, 3 * math.pi],
                                   rtol=1e-13)

    def test_j0_first_zero_vs_series_bisection(self):
        """Independent oracle: bisect a 12-term ascending series on (2, 3)."""
        def j0_series(t):
            acc, term = 1.0, 1.0
            for k in range(1, 13):
                term *= -(t * t / 4.0) / (k * k)
                acc += term
            return acc

        lo, hi = 2.0, 3.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if j0_series(lo) * j0_series(mid) <= 0:
                hi = mid
            else:
                lo = mid
        assert bessel.zeros(0.0, 1)[0] == pytest.approx(0.5 * (lo + hi),
                                                        abs=1e-10)
        assert bessel.zeros(0.0, 1)[0] == pytest.approx(2.404825558, abs=1e-8)

    def test_gaps_approach_pi(self):
        z = bessel.zeros(0.0, 50)
        gaps = np.diff(z)[5:]
        assert np.all(gaps > math.pi - 0.1)
        assert np.all(gaps < math.pi + 0.1)

    def test_residuals_below_1e12(self):
        for nu in (0.0, 1.0, 2.5, 4.0):
            z = bessel.zeros(nu, 30)
            assert np.max(np.abs(bessel.bessel_j(nu, z))) < 1e-12
            assert np.max(np.abs(jv(nu, z))) < 1e-11  # independent oracle
            assert np.all(np.diff(z) > 0)

    def test_lazy_extension_consistent(self):
        t = bessel.ZeroTable(1.0)
        first = t.get(3)
        t.extend(20)
        assert t.get(3) == first
        assert len(t) == 20


class TestGrowthBounds:
    def test_half_order_constant(self):
        # |J_{1/2}| * max(sqrt t, t^{-1/2}) = sqrt(2/pi)|sin t| * max(1, 1/t)
        c = bessel.check_growth_bounds(0.5, np.geomspace(0.01, 100, 2000))
        assert c <= math.sqrt(2 / math.pi) + 0.01

    def test_j0_small_argument(self):
        c = bessel.check_growth_bounds(0.0, np.geomspace(1e-4, 0.5, 200))
        assert c <= 1.0 + 1e-12

    def test_large_argument_envelope(self):
        c = bessel.check_growth_bounds(2.0, np.geomspace(10, 1e4, 4000))
        assert abs(c - math.sqrt(2 / math.pi)) < 0.2 * math.sqrt(2 / math.pi)

    def test_stable_under_grid_widening(self):
        c1 = bessel.check_growth_bounds(1.0, np.geomspace(0.01, 100, 1000))
        c2 = bessel.check_growth_bounds(1.0, np.geomspace(0.001, 1000, 3000))
        assert c2 <= c1 * 1.05 + 0.05
