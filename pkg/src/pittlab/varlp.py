"""Variable-exponent Lebesgue machinery on the real line.

Functions and exponents are given as profiles on (0, inf) and extended
evenly to the line; a translation offset supports shifted copies f(x - h).
The modular is rho_p(f) = int |f(x)|^{p(x)} dx and the norm is the Luxemburg
norm inf{lambda > 0 : rho_p(f/lambda) <= 1}, located by bisection in lambda
(the modular is nonincreasing in lambda, so bisection is unconditionally
safe).

Points where the exponent is infinite contribute 0 where |f| <= lambda and
+inf where |f| > lambda, matching the usual convention for variable
exponents taking the value infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import quad
from .funcdsl import ScalarFn, log_grid, validate_props

__all__ = [
    "NotBracketable",
    "ExponentProfile",
    "NormResult",
    "modular",
    "luxemburg_norm",
    "translate_norm_limit",
    "log_holder_modulus",
]

_BISECT_TOL = 1e-10
_BISECT_CAP = 200


class NotBracketable(ArithmeticError):
    """The modular stays above 1 for every tested scaling."""


def _knots_of(f) -> list:
    return list(f.knots()) if hasattr(f, "knots") else []


@dataclass
class NormResult:
    norm: float
    modular_at_norm: float
    bracket_width: float
    iterations: int


class ExponentProfile:
    """An exponent function p on the line, represented by its radial part.

    ``p0`` maps (0, inf) into [1, inf]; the profile on the line is the even
    extension p(x) = p0(|x|).  ``p_minus``/``p_plus`` are grid infimum and
    supremum (the grid includes the declared knots); ``p_diamond`` is the
    declared limit at infinity, checked numerically at t = 1e8 when finite.
    """

    def __init__(self, p0, p_diamond: float | None = None,
                 monotone_flag: str = "none",
                 grid=(1e-6, 1e8, 241)):
        if isinstance(p0, str):
            p0 = ScalarFn(p0)
        self.p0 = p0
        if monotone_flag not in ("nondecreasing", "nonincreasing", "none"):
            raise ValueError(f"bad monotone_flag {monotone_flag!r}")
        self.monotone_flag = monotone_flag
        ts = log_grid(*grid)
        ks = [k for k in _knots_of(p0) if grid[0] < k < grid[1]]
        probe = np.sort(np.concatenate([
            ts, np.asarray(ks), np.asarray(ks) * (1 + 1e-9),
            np.asarray(ks) * (1 - 1e-9)])) if ks else ts
        vals = np.asarray([float(p0(float(t))) for t in probe])
        if np.any(np.isnan(vals)):
            raise ValueError("exponent profile evaluates to NaN")
        self.p_minus = float(np.min(vals))
        self.p_plus = float(np.max(vals))
        if self.p_minus < 1.0 - 1e-12:
            raise ValueError(f"exponent must be >= 1, found {self.p_minus}")
        if p_diamond is not None and math.isfinite(p_diamond):
            seen = float(p0(1e8))
            if abs(seen - p_diamond) > 1e-6:
                raise ValueError(
                    f"declared p_diamond={p_diamond} but p0(1e8)={seen}")
        self.p_diamond = p_diamond

    def __call__(self, t):
        return self.p0(t)

    @property
    def is_constant(self) -> bool:
        return self.p_plus - self.p_minus <= 1e-12

    def validate_monotone(self, grid=None) -> list:
        if self.monotone_flag == "none":
            return []
        if not isinstance(self.p0, ScalarFn):
            raise TypeError("monotonicity validation needs a ScalarFn")
        f = ScalarFn(self.p0.expr, (self.monotone_flag,))
        return validate_props(f, log_grid(1e-3, 1e6, 121) if grid is None
                              else grid)

    def conjugate(self) -> "ExponentProfile":
        """Pointwise conjugate exponent p' with 1/p + 1/p' = 1."""
        if not isinstance(self.p0, ScalarFn):
            raise TypeError("conjugate needs a ScalarFn exponent")
        if self.p0.has_inf:
            raise ValueError("conjugate of an exponent reaching inf is not "
                             "representable in the DSL")
        src = f"({self.p0.source}) / (({self.p0.source}) - 1)"
        pd = None
        if self.p_diamond is not None and math.isfinite(self.p_diamond) \
                and self.p_diamond > 1:
            pd = self.p_diamond / (self.p_diamond - 1)
        flag = {"nondecreasing": "nonincreasing",
                "nonincreasing": "nondecreasing"}.get(self.monotone_flag,
                                                      "none")
        return ExponentProfile(ScalarFn(src), pd, flag)


def conjugate_value(p: float) -> float:
    if p == 1.0:
        return math.inf
    if math.isinf(p):
        return 1.0
    return p / (p - 1.0)


def _power_with_inf(base, expo):
    """base**expo with the infinite-exponent convention (0 below 1, inf above)."""
    base = np.asarray(base, dtype=np.float64)
    expo = np.asarray(expo, dtype=np.float64)
    with np.errstate(all="ignore"):
        out = np.power(base, expo)
    m = np.isinf(expo)
    if np.any(m):
        b = np.broadcast_to(base, out.shape)[m] if base.shape != out.shape \
            else base[m]
        out = np.array(out, copy=True)
        out[m] = np.where(b <= 1.0, 0.0, np.inf)
    return out


def _modular_integrand(f, p: ExponentProfile, lam: float, shift: float):
    def g(u):
        u = np.asarray(u, dtype=np.float64)
        fu = np.abs(np.asarray(f(np.abs(u)), dtype=np.float64)) / lam
        pu = np.asarray(p.p0(np.abs(u + shift)), dtype=np.float64)
        return _power_with_inf(fu, pu)
    return g


def _modular_knots(f, p: ExponentProfile, shift: float) -> list:
    ks = {0.0, -shift}
    for k in _knots_of(f):
        ks.update((k, -k))
    for k in _knots_of(p.p0):
        ks.update((-shift + k, -shift - k))
    return sorted(ks)


def modular(f, p: ExponentProfile, quad_tol: float = quad.TOL_NORM, *,
            shift: float = 0.0, lam: float = 1.0) -> float:
    """rho_p(tau_shift f / lam) over the line; +inf when divergent.

    ``f`` is the radial part of an even function (ScalarFn or vectorized
    callable); ``shift`` translates it by h, i.e. the integrand is
    |f(|u|)/lam|^{p(|u+h|)} du.
    """
    g = _modular_integrand(f, p, lam, shift)
    knots = _modular_knots(f, p, shift)
    try:
        res = quad.integrate_real_line(g, quad_tol, knots=knots)
    except quad.DivergentIntegral:
        return math.inf
    if res.diverged or not math.isfinite(res.value):
        return math.inf
    return res.value


def _sup_on_grid(f) -> float:
    ts = log_grid(1e-8, 1e8, 161)
    ks = np.asarray([k for k in _knots_of(f) if k > 0])
    if ks.size:
        ts = np.sort(np.concatenate([ts, ks * (1 - 1e-9), ks,
                                     ks * (1 + 1e-9)]))
    vals = np.abs(np.asarray(f(ts), dtype=np.float64))
    vals = vals[np.isfinite(vals)]
    return float(np.max(vals)) if vals.size else 0.0


def luxemburg_norm(f, p: ExponentProfile, tol: float = 1e-8, *,
                   quad_tol: float = quad.TOL_NORM,
                   shift: float = 0.0) -> NormResult:
    """Luxemburg norm by bisection on the scaling parameter.

    Returns the feasible-side bracket endpoint (the smallest tested lambda
    with modular <= 1); when the modular jumps discontinuously across 1 the
    bracket width reported in the result is the honest resolution.
    """
    rho = lambda lam: modular(f, p, quad_tol, shift=shift, lam=lam)
    l1 = quad.integrate_halfline(
        lambda t: np.abs(np.asarray(f(t), dtype=np.float64)), 0.0,
        max(quad_tol, 1e-9), knots=_knots_of(f))
    linf = _sup_on_grid(f)
    lam0 = min(2.0 * l1.value + linf, 1e200) if math.isfinite(l1.value) \
        else max(linf, 1.0)
    if lam0 == 0.0:
        return NormResult(0.0, 0.0, 0.0, 0)
    iters = 0
    hi = lam0
    for _ in range(80):
        iters += 1
        if rho(hi) <= 1.0:
            break
        hi *= 2.0
    else:
        raise NotBracketable("modular exceeds 1 up to 2^80 * lambda0")
    lo = hi / 2.0
    while rho(lo) <= 1.0:
        iters += 1
        hi = lo
        lo /= 2.0
        if lo < lam0 * 2.0 ** -100 or lo < 1e-300:
            # modular never exceeds 1: the function is (numerically) null
            return NormResult(0.0, rho(lo), lo, iters)
    while (hi - lo) > _BISECT_TOL * hi and (hi - lo) > tol * hi \
            and iters < _BISECT_CAP:
        iters += 1
        mid = 0.5 * (lo + hi)
        if rho(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return NormResult(hi, rho(hi), hi - lo, iters)


def translate_norm_limit(f, p: ExponentProfile, h_schedule, tol: float = 1e-8,
                         *, quad_tol: float = quad.TOL_NORM) -> list:
    """Norms of the translates f(. - h) for each h in the schedule."""
    return [(float(h), luxemburg_norm(f, p, tol, quad_tol=quad_tol,
                                      shift=float(h)))
            for h in h_schedule]


def log_holder_modulus(p: ExponentProfile, x0: float, radii) -> float:
    """max over r of |p(x0 + r) - p(x0)| * (-log r) for radii in (0, 1/2).

    Finite for log-Hoelder (e.g. Lipschitz) profiles; grows like -log r for
    jump profiles.
    """
    radii = np.asarray(radii, dtype=np.float64)
    if np.any((radii <= 0) | (radii >= 0.5)):
        raise ValueError("radii must lie in (0, 1/2)")
    if x0 < 0:
        raise ValueError("x0 must be >= 0 (profiles are even)")
    base = float(p.p0(x0)) if x0 > 0 else float(p.p0(1e-300))
    vals = np.asarray([float(p.p0(abs(x0 + r))) for r in radii])
    return float(np.max(np.abs(vals - base) * (-np.log(radii))))
