"""Radial Fourier transforms and the two majorant functionals.

For a radial function f(x) = f0(|x|) on R^n the transform (with the
e^{-2 pi i x.xi} normalization, so the Gaussian e^{-pi r^2} is a fixed
point in every dimension) reduces to the Bessel-kernel integral

    fhat(xi) = 2 pi xi^{1 - n/2} int_0^inf r^{n/2} f0(r) J_{n/2-1}(2 pi xi r) dr,

evaluated here in the improper (limit of partial integrals) sense so that
profiles at the edge of the monotone class are still covered.

The two majorants:

* ``hl_majorant``:  int_0^{1/xi} r^{n-1} f0(r) dr                (sharp bound
  on the alpha-monotone class with alpha = (n-1)/2)
* ``cfl_majorant``: xi^{-(n-1)/2} int_0^{1/xi} r^{(n-1)/2} f0(r) dr
  (the weaker comparison bound; identical to the first when n = 1)
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import quad
from .funcdsl import ScalarFn, log_grid
from .utils import parallel_map

__all__ = [
    "HypothesisWarning",
    "NonConvergence",
    "RadialProfile",
    "TransformSample",
    "radial_ft",
    "hl_majorant",
    "cfl_majorant",
    "majorant_ratio_sweep",
]


class NonConvergence(ArithmeticError):
    """The oscillatory tail did not settle within the interval budget."""


class HypothesisWarning(UserWarning):
    """Tail behavior inconsistent with an (undeclared) monotone class."""


@dataclass
class TransformSample:
    xi: float
    value: float
    quad: quad.QuadResult


class RadialProfile:
    """A radial profile f0 on (0, inf) living in dimension ``dim``.

    ``alpha_monotone`` optionally asserts that t^alpha f0(t) is nonincreasing
    with limit zero; :meth:`validate_monotone_class` spot-checks this on a
    log grid.  The theorems of interest take (n-1)/2 <= alpha <= n-1.
    """

    def __init__(self, f0, dim: int, alpha_monotone: float | None = None):
        if isinstance(f0, str):
            f0 = ScalarFn(f0)
        if not (isinstance(dim, int) and dim >= 1):
            raise ValueError("dim must be a positive integer")
        if hasattr(f0, "has_inf") and f0.has_inf:
            raise ValueError("radial profiles must be finite (no inf literal)")
        self.f0 = f0
        self.dim = dim
        self.alpha_monotone = alpha_monotone

    @property
    def bessel_order(self) -> float:
        return self.dim / 2.0 - 1.0

    def knots(self):
        return self.f0.knots() if hasattr(self.f0, "knots") else []

    def in_theorem_range(self) -> bool:
        a = self.alpha_monotone
        n = self.dim
        return a is not None and (n - 1) / 2.0 - 1e-12 <= a <= n - 1 + 1e-12

    def validate_monotone_class(self, grid=None) -> list:
        """Violations of the declared alpha-monotonicity on a log grid."""
        if self.alpha_monotone is None:
            return []
        a = self.alpha_monotone
        ts = log_grid(1e-3, 1e4, 141) if grid is None else np.asarray(grid)
        ks = np.asarray([k for k in self.knots() if ts[0] < k < ts[-1]])
        if ks.size:
            ts = np.sort(np.concatenate([ts, ks * (1 - 1e-9), ks]))
        vals = np.asarray([float(self.f0(float(t))) * float(t) ** a
                           for t in ts])
        out = []
        slack = 1e-12 * max(1.0, float(np.max(np.abs(vals))))
        for k in range(len(ts) - 1):
            if vals[k + 1] > vals[k] + slack:
                out.append(("alpha_monotone", (float(ts[k]), float(ts[k + 1])),
                            (float(vals[k]), float(vals[k + 1]))))
        if not abs(vals[-1]) < 1e-3 * max(abs(vals[0]), 1e-300):
            out.append(("limit_zero", float(ts[-1]), float(vals[-1])))
        return out

    def dilated(self, lam: float) -> "RadialProfile":
        """The L1-normalized dilation x -> lam^n f(lam x)."""
        if not isinstance(self.f0, ScalarFn):
            raise TypeError("dilation needs a ScalarFn profile")
        g = self.f0.scaled_arg(lam).times_const(lam ** self.dim)
        return RadialProfile(g, self.dim, self.alpha_monotone)


def _smooth_part(f: RadialProfile):
    f0 = self_f0 = f.f0
    half_n = f.dim / 2.0

    def smooth(r):
        r = np.asarray(r, dtype=np.float64)
        return np.asarray(self_f0(r), dtype=np.float64) * r ** half_n

    return smooth


def radial_ft(f: RadialProfile, xi: float, tol: float = quad.TOL_NORM, *,
              head_end: float | None = None,
              max_intervals: int = 512) -> TransformSample:
    """fhat(xi) for xi > 0; raises NonConvergence if the tail never settles."""
    if not xi > 0:
        raise ValueError("xi must be positive")
    n = f.dim
    g = quad.OscillatoryIntegrand(_smooth_part(f), f.bessel_order,
                                  2.0 * math.pi * xi,
                                  knots=tuple(f.knots()))
    res = quad.integrate_oscillatory(g, tol, head_end=head_end,
                                     max_intervals=max_intervals)
    pref = 2.0 * math.pi * xi ** (1.0 - n / 2.0)
    sample = TransformSample(xi, pref * res.value, res)
    sample.quad.abs_error_estimate *= pref
    if not res.converged:
        raise NonConvergence(
            f"transform at xi={xi} did not converge "
            f"(tail estimate {res.abs_error_estimate:.2e})")
    if f.alpha_monotone is None and not res.tail_alternating:
        warnings.warn("oscillatory tail is not alternating and no monotone "
                      "class was declared", HypothesisWarning, stacklevel=2)
    return sample


def hl_majorant(f: RadialProfile, xi: float,
                tol: float = quad.TOL_NORM) -> float:
    """int_0^{1/xi} r^{n-1} f0(r) dr; raises DivergentIntegral when f0 is
    too singular at the origin (r^{-s} with s >= n)."""
    if not xi > 0:
        raise ValueError("xi must be positive")
    n = f.dim
    f0 = f.f0

    def g(r):
        r = np.asarray(r, dtype=np.float64)
        return np.asarray(f0(r), dtype=np.float64) * r ** (n - 1)

    res = quad.integrate_to_zero(g, 1.0 / xi, tol, knots=f.knots())
    if res.diverged:
        raise quad.DivergentIntegral("profile too singular at 0")
    return res.value


def cfl_majorant(f: RadialProfile, xi: float,
                 tol: float = quad.TOL_NORM) -> float:
    """xi^{-(n-1)/2} int_0^{1/xi} r^{(n-1)/2} f0(r) dr."""
    if not xi > 0:
        raise ValueError("xi must be positive")
    n = f.dim
    f0 = f.f0
    e = (n - 1) / 2.0

    def g(r):
        r = np.asarray(r, dtype=np.float64)
        return np.asarray(f0(r), dtype=np.float64) * r ** e

    res = quad.integrate_to_zero(g, 1.0 / xi, tol, knots=f.knots())
    if res.diverged:
        raise quad.DivergentIntegral("profile too singular at 0")
    return xi ** (-e) * res.value


def majorant_ratio_sweep(f: RadialProfile, xi_grid,
                         tol: float = quad.TOL_SWEEP) -> list:
    """Rows (xi, |fhat|, hl, cfl, |fhat|/hl, hl/cfl) over the grid."""
    xi_grid = [float(x) for x in np.asarray(xi_grid, dtype=np.float64)]

    def one(xi):
        ft = radial_ft(f, xi, tol)
        hl = hl_majorant(f, xi, tol)
        cfl = cfl_majorant(f, xi, tol)
        r1 = abs(ft.value) / hl if hl > 0 else math.inf
        r2 = hl / cfl if cfl > 0 else math.inf
        return (xi, ft.value, hl, cfl, r1, r2)

    return parallel_map(one, xi_grid)
