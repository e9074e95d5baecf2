"""Quadrature engines against closed forms, plus the structural properties
(additivity, conservative error estimates, head-interval invariance)."""

import math

import numpy as np
import pytest

from pittlab import quad
from pittlab.funcdsl import ScalarFn


class TestFinite:
    def test_inverse_sqrt_singularity(self):
        r = quad.integrate_finite(lambda t: t ** -0.5, 0.0, 1.0, 1e-9)
        assert r.converged
        assert r.value == pytest.approx(2.0, abs=2e-9)

    def test_monomial(self):
        r = quad.integrate_finite(lambda t: np.asarray(t) ** 2, 0.0, 1.0, 1e-12)
        assert r.value == pytest.approx(1.0 / 3.0, abs=1e-14)

    def test_full_period_sine(self):
        r = quad.integrate_finite(np.sin, 0.0, 2 * math.pi, 1e-12)
        assert abs(r.value) < 1e-12

    def test_knot_restores_accuracy(self):
        f = ScalarFn("chi(0,1)*t")
        with_knot = quad.integrate_finite(f, 0.0, 2.0, 1e-12, knots=f.knots())
        assert with_knot.value == pytest.approx(0.5, abs=1e-13)

    def test_additivity(self):
        f = lambda t: np.exp(-np.asarray(t)) * np.sin(3 * np.asarray(t))
        ab = quad.integrate_finite(f, 0.0, 1.3, 1e-10)
        bc = quad.integrate_finite(f, 1.3, 4.0, 1e-10)
        ac = quad.integrate_finite(f, 0.0, 4.0, 1e-10)
        tol = 2 * (ab.abs_error_estimate + bc.abs_error_estimate
                   + ac.abs_error_estimate)
        assert abs(ab.value + bc.value - ac.value) <= max(tol, 1e-14)

    def test_error_estimate_conservative(self):
        cases = [
            (lambda t: np.exp(-np.asarray(t) ** 2), 0.0, 3.0,
             math.sqrt(math.pi) / 2 * math.erf(3.0)),
            (lambda t: t ** -0.25, 0.0, 1.0, 4.0 / 3.0),
            (lambda t: np.cos(5 * np.asarray(t)), 0.0, 2.0,
             math.sin(10.0) / 5.0),
        ]
        for f, a, b, exact in cases:
            r = quad.integrate_finite(f, a, b, 1e-8)
            assert abs(r.value - exact) <= max(r.abs_error_estimate, 1e-13)

    def test_nonconvergence_flagged(self):
        r = quad.integrate_finite(lambda t: t ** -0.95, 0.0, 1.0, 1e-12,
                                  max_panels=40)
        assert not r.converged
        assert r.abs_error_estimate > 1e-12

    def test_divergent_value_raises(self):
        def f(t):
            with np.errstate(divide="ignore"):
                return 1.0 / (np.asarray(t) - 0.5) ** 2

        with pytest.raises(quad.DivergentIntegral):
            quad.integrate_finite(f, 0.0, 1.0, 1e-9, knots=[0.5])


class TestImproper:
    def test_gaussian_halfline(self):
        r = quad.integrate_halfline(lambda t: np.exp(-math.pi * np.asarray(t) ** 2),
                                    0.0, 1e-10)
        assert r.converged
        assert r.value == pytest.approx(0.5, abs=1e-10)

    def test_slow_power_tail_extrapolated(self):
        r = quad.integrate_halfline(lambda t: np.asarray(t) ** -1.3, 1.0, 1e-9)
        assert r.converged
        assert r.value == pytest.approx(1.0 / 0.3, abs=1e-8)

    def test_halfline_divergence_flagged(self):
        r = quad.integrate_halfline(lambda t: np.asarray(t) ** -0.8, 1.0, 1e-9)
        assert r.diverged and r.value == math.inf

    def test_to_zero_singular(self):
        r = quad.integrate_to_zero(lambda t: np.asarray(t) ** -0.5, 1.0, 1e-10)
        assert r.converged
        assert r.value == pytest.approx(2.0, abs=1e-9)

    def test_to_zero_divergence_flagged(self):
        r = quad.integrate_to_zero(lambda t: np.asarray(t) ** -1.2, 1.0, 1e-9)
        assert r.diverged

    def test_to_zero_mass_near_origin_not_missed(self):
        # integrand negligible on the outer decades, all mass below t=1
        r = quad.integrate_to_zero(
            lambda t: np.exp(-math.pi * np.asarray(t) ** 2), 1000.0, 1e-9)
        assert r.value == pytest.approx(0.5, abs=1e-8)

    def test_real_line(self):
        r = quad.integrate_real_line(
            lambda x: np.exp(-np.abs(np.asarray(x))), 1e-10)
        assert r.value == pytest.approx(2.0, abs=1e-9)


def indicator_transform_1d(xi):
    return math.sin(2 * math.pi * xi) / (math.pi * xi)


class TestOscillatory:
    def test_indicator_at_wavelength(self):
        # full transform of chi_{[-1,1]} at xi=1 via the n=1 kernel: zero
        f0 = ScalarFn("chi(0,1)")
        g = quad.OscillatoryIntegrand(
            lambda r: np.sqrt(np.asarray(r)) * f0(r), 0.5, 2 * math.pi,
            knots=(1.0,))
        res = quad.integrate_oscillatory(g, 1e-9)
        assert res.converged
        assert abs(2 * math.pi * res.value) < 1e-8

    def test_gaussian_value(self):
        g = quad.OscillatoryIntegrand(
            lambda r: np.sqrt(np.asarray(r)) * np.exp(-math.pi * np.asarray(r) ** 2),
            -0.5, 2 * math.pi)
        res = quad.integrate_oscillatory(g, 1e-10)
        assert res.converged
        assert 2 * math.pi * res.value == pytest.approx(math.exp(-math.pi),
                                                        abs=1e-10)

    def test_zero_integrand_exits_after_one_interval(self):
        g = quad.OscillatoryIntegrand(lambda r: 0.0 * np.asarray(r), 0.5, 1.0)
        res = quad.integrate_oscillatory(g, 1e-10)
        assert res.converged
        assert res.value == 0.0
        assert res.tail_terms_used == 1

    def test_bessel_j0_total_integral(self):
        # int_0^inf J_0(r) dr = 1, a slowly-converging alternating tail
        g = quad.OscillatoryIntegrand(
            lambda r: np.ones_like(np.asarray(r, dtype=float)), 0.0, 1.0)
        res = quad.integrate_oscillatory(g, 1e-9)
        assert res.converged
        assert res.value == pytest.approx(1.0, abs=1e-9)

    def test_head_interval_doubling_invariance(self):
        from pittlab import bessel
        g = quad.OscillatoryIntegrand(
            lambda r: np.sqrt(np.asarray(r)) * np.exp(-np.asarray(r)), 0.5,
            4.0)
        z1 = bessel.zeros(0.5, 1)[0] / 4.0
        a = quad.integrate_oscillatory(g, 1e-9)
        b = quad.integrate_oscillatory(g, 1e-9, head_end=2 * z1)
        assert abs(a.value - b.value) <= 2e-9

    def test_nonconvergence_reported(self):
        g = quad.OscillatoryIntegrand(
            lambda r: np.sqrt(np.asarray(r)) * np.exp(-np.asarray(r)), 0.5,
            4.0)
        res = quad.integrate_oscillatory(g, 1e-9, max_intervals=3)
        assert not res.converged

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_error_estimate_conservative_for_transforms(self, n):
        """Nested-rule + acceleration estimate bounds the true error on the
        Gaussian pair at several frequencies (20 combinations overall)."""
        from pittlab import hankel
        prof = hankel.RadialProfile(
            ScalarFn("exp(-3.141592653589793*t^2)"), n, alpha_monotone=0.0)
        xis = [0.11, 0.33, 0.7, 1.0, 1.6, 2.1, 3.3][: 7 if n == 1 else 6]
        for xi in xis:
            s = hankel.radial_ft(prof, xi, 1e-9)
            exact = math.exp(-math.pi * xi * xi)
            assert abs(s.value - exact) <= max(s.quad.abs_error_estimate,
                                               1e-13)
