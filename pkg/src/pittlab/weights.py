"""Decidable weight conditions for the weighted Fourier inequalities.

Each condition compares two radial integrals for every radius r; "holds"
means the ratio LHS(r)/RHS(r) stays bounded over all r.  Numerically the
quantifier is scanned over a log grid of radii and decided by the trend at
both ends (power-law behavior dominates there); power-law weights also get
an exact closed-form verdict from the integral-exponent arithmetic.
Near-boundary cases are reported as ``inconclusive`` rather than forced:
the hidden constants make them undecidable at desk scale.

Sphere-measure constants are dropped throughout: every condition is a ratio
condition, so they cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import quad
from .funcdsl import ScalarFn, log_grid
from .varlp import ExponentProfile, conjugate_value

__all__ = [
    "WeightProfile",
    "ConditionReport",
    "default_r_grid",
    "check_bp",
    "check_21",
    "hardy_operator",
    "check_hardy_conditions",
]

_SCAN_TOL = 1e-9  # relative accuracy target for scan integrals
_FAIL_GROWTH = 10.0  # ratio growth across the outer two decades => fails
_HOLD_SLACK = 1.10  # allowed ratio creep across the outermost decade


def default_r_grid() -> np.ndarray:
    return log_grid(1e-4, 1e4, 241)


class WeightProfile:
    """A positive weight v on (0, inf), optionally an exact power law t^beta."""

    def __init__(self, v, power_law: float | None = None):
        if isinstance(v, str):
            v = ScalarFn(v)
        if hasattr(v, "has_inf") and v.has_inf:
            raise ValueError("weights must be finite (no inf literal)")
        self.v = v
        ts = log_grid(1e-6, 1e6, 61)
        vals = np.asarray([float(v(float(t))) for t in ts])
        if not np.all(np.isfinite(vals)) or not np.all(vals > 0.0):
            raise ValueError("weight must be positive and finite on (0, inf)")
        if power_law is not None:
            c = vals / ts ** power_law
            if np.max(np.abs(c / c[0] - 1.0)) > 1e-6:
                raise ValueError("declared power_law inconsistent with v")
        self.power_law = power_law

    def __call__(self, t):
        return self.v(t)

    @classmethod
    def power(cls, beta: float) -> "WeightProfile":
        return cls(ScalarFn(f"t^({beta!r})"), power_law=beta)


@dataclass
class ConditionReport:
    verdict: str  # holds | fails | inconclusive
    sup_ratio: float
    witness_r: float
    ratio_profile: list = field(default_factory=list)  # (r, lhs, rhs)
    method: str = "numeric_scan"
    notes: str = ""


def _trend_verdict(rs, lhs, rhs, notes="") -> ConditionReport:
    """Verdict from the ratio profile on a log grid of radii.

    fails: ratio grows >= 10x across the outer two decades at either end (or
    a divergence was flagged upstream); holds: finite sup and non-increasing
    trend over the outermost decade at both ends; otherwise inconclusive.
    """
    rs = np.asarray(rs)
    ratio = np.asarray(lhs) / np.asarray(rhs)
    prof = list(zip(rs.tolist(), list(map(float, lhs)), list(map(float, rhs))))
    if not np.all(np.isfinite(ratio)):
        sup = math.inf
        wr = float(rs[np.argmax(~np.isfinite(ratio))])
        return ConditionReport("fails", sup, wr, prof,
                               notes=(notes + " non-finite ratio").strip())
    sup = float(np.max(ratio))
    wr = float(rs[np.argmax(ratio)])

    logr = np.log(rs)

    def at(r):
        # geometric interpolation keeps the verdict grid-independent
        return float(np.exp(np.interp(math.log(r), logr, np.log(ratio))))

    r_lo, r_hi = float(rs[0]), float(rs[-1])
    two_in_lo = at(r_lo * 100.0)
    two_in_hi = at(r_hi / 100.0)
    one_in_lo = at(r_lo * 10.0)
    one_in_hi = at(r_hi / 10.0)
    growth_lo = ratio[0] / two_in_lo if two_in_lo > 0 else math.inf
    growth_hi = ratio[-1] / two_in_hi if two_in_hi > 0 else math.inf
    if growth_lo >= _FAIL_GROWTH or growth_hi >= _FAIL_GROWTH:
        return ConditionReport(
            "fails", sup, float(rs[0]) if growth_lo >= growth_hi else r_hi,
            prof, notes=(notes + f" end growth {max(growth_lo, growth_hi):.3g}x"
                         ).strip())
    if ratio[0] <= one_in_lo * _HOLD_SLACK and ratio[-1] <= one_in_hi * _HOLD_SLACK:
        return ConditionReport("holds", sup, wr, prof, notes=notes.strip())
    return ConditionReport("inconclusive", sup, wr, prof,
                           notes=(notes + " unresolved end trend").strip())


def _improper_tail(f, r, knots=()):
    """int_r^inf f with a relative-accuracy target; diverged flag on result."""
    scale_probe = quad.integrate_finite(f, r, 4.0 * r, 1e-6)
    tol = max(1e-300, _SCAN_TOL * max(abs(scale_probe.value), 1e-30))
    return quad.integrate_halfline(f, r, tol, knots=knots)


def _improper_head(f, r, knots=()):
    """int_0^r f with a relative-accuracy target; diverged flag on result."""
    scale_probe = quad.integrate_finite(f, r / 4.0, r, 1e-6)
    tol = max(1e-300, _SCAN_TOL * max(abs(scale_probe.value), 1e-30))
    return quad.integrate_to_zero(f, r, tol, knots=knots)


# ---------------------------------------------------------------------------
# condition (bp):  r^{p(n-alpha)} int_{|x|>=r} |x|^{-np} v dx
#                    <~  int_{|x|<=r} v |x|^{-alpha p} dx


def check_bp(v: WeightProfile, p: float, alpha: float, n: int,
             r_grid=None) -> ConditionReport:
    """Decide the weight condition behind the weighted Fourier inequality.

    Radial reduction: LHS(r) = r^{p(n-alpha)} int_r^inf t^{-np+n-1} v dt,
    RHS(r) = int_0^r v t^{-alpha p+n-1} dt.  Power-law weights are decided
    exactly: with v = t^beta both sides are constants times r^{beta+n-alpha p},
    and finiteness requires alpha p - n < beta < n(p-1) (open range).
    """
    if p < 1:
        raise ValueError("p must be >= 1")
    if not (n - 1) / 2.0 - 1e-12 <= alpha <= n - 1 + 1e-12:
        raise ValueError("alpha outside [(n-1)/2, n-1]")
    if v.power_law is not None:
        beta = v.power_law
        e_tail = beta - n * p + n - 1  # tail integrand exponent
        e_head = beta - alpha * p + n - 1  # head integrand exponent
        tail_ok = e_tail < -1.0  # beta < n(p-1)
        head_ok = e_head > -1.0  # beta > alpha p - n
        if tail_ok and head_ok:
            ratio = (e_head + 1.0) / (-(e_tail + 1.0))
            return ConditionReport("holds", ratio, 1.0,
                                   [(1.0, ratio, 1.0)], "closed_form")
        note = []
        if not tail_ok:
            note.append("DivergentLHS tail exponent >= -1")
        if not head_ok:
            note.append("DivergentRHS head exponent <= -1")
        return ConditionReport("fails", math.inf, 1.0, [], "closed_form",
                               "; ".join(note))

    rs = default_r_grid() if r_grid is None else np.asarray(r_grid)
    vfun = v.v
    knots = vfun.knots() if hasattr(vfun, "knots") else []

    def tail_integrand(t):
        t = np.asarray(t, dtype=np.float64)
        return np.asarray(vfun(t)) * t ** (-n * p + n - 1)

    def head_integrand(t):
        t = np.asarray(t, dtype=np.float64)
        return np.asarray(vfun(t)) * t ** (-alpha * p + n - 1)

    lhs, rhs = [], []
    for r in rs:
        tail = _improper_tail(tail_integrand, float(r), knots)
        head = _improper_head(head_integrand, float(r), knots)
        if head.diverged:
            return ConditionReport("fails", math.inf, float(r), [],
                                   "numeric_scan", "DivergentRHS")
        if tail.diverged:
            return ConditionReport("fails", math.inf, float(r), [],
                                   "numeric_scan", "DivergentLHS")
        if not (tail.converged and head.converged):
            return ConditionReport("inconclusive", math.nan, float(r), [],
                                   "numeric_scan",
                                   "integral did not settle (boundary case)")
        lhs.append(float(r) ** (p * (n - alpha)) * tail.value)
        rhs.append(head.value)
    return _trend_verdict(rs, lhs, rhs)


# ---------------------------------------------------------------------------
# condition (2.1): the variable-exponent analogue, exponent evaluated at 1/t


def check_21(v: WeightProfile, p: ExponentProfile, n: int,
             r_grid=None) -> ConditionReport:
    """Numeric scan of the variable-exponent weight condition.

    LHS(r) = int_r^inf r^{p0(1/t)} t^{-n p0(1/t)+n-1} v(t) dt,
    RHS(r) = int_0^r v(t) t^{(1-n) p0(1/t)+n-1} dt.  Requires p0
    nonincreasing and bounded near the origin; with constant exponent this
    reduces exactly to check_bp at alpha = n-1.
    """
    if p.p_minus < 1.0 - 1e-12:
        raise ValueError("exponent must be >= 1")
    if math.isinf(p.p_plus):
        raise ValueError("(2.1) scan needs a bounded exponent")
    rs = default_r_grid() if r_grid is None else np.asarray(r_grid)
    vfun = v.v
    p0 = p.p0
    knots = vfun.knots() if hasattr(vfun, "knots") else []

    lhs, rhs = [], []
    for r in rs:
        logr = math.log(float(r))

        def tail_integrand(t, _logr=logr):
            t = np.asarray(t, dtype=np.float64)
            pv = np.asarray(p0(1.0 / t), dtype=np.float64)
            return np.exp(_logr * pv) * t ** (n - 1.0) \
                * t ** (-n * pv) * np.asarray(vfun(t))

        def head_integrand(t):
            t = np.asarray(t, dtype=np.float64)
            pv = np.asarray(p0(1.0 / t), dtype=np.float64)
            return np.asarray(vfun(t)) * t ** ((1.0 - n) * pv + n - 1.0)

        tail = _improper_tail(tail_integrand, float(r), knots)
        head = _improper_head(head_integrand, float(r), knots)
        if head.diverged:
            return ConditionReport("fails", math.inf, float(r), [],
                                   "numeric_scan", "DivergentRHS")
        if tail.diverged:
            return ConditionReport("fails", math.inf, float(r), [],
                                   "numeric_scan", "DivergentLHS")
        if not (tail.converged and head.converged):
            return ConditionReport("inconclusive", math.nan, float(r), [],
                                   "numeric_scan",
                                   "integral did not settle (boundary case)")
        lhs.append(tail.value)
        rhs.append(head.value)
    return _trend_verdict(rs, lhs, rhs)


# ---------------------------------------------------------------------------
# Hardy machinery


def hardy_operator(g, x: float, tol: float = 1e-10) -> float:
    """H(g)(x) = (1/x) int_0^x g(t) dt."""
    if not x > 0:
        raise ValueError("x must be positive")
    knots = g.knots() if hasattr(g, "knots") else []
    res = quad.integrate_to_zero(g, x, tol, knots=knots)
    if res.diverged:
        raise quad.DivergentIntegral("Hardy average diverges near 0")
    return res.value / x


class _CumulativeHead:
    """Cached evaluator of Delta(t) = int_0^t f, queried at many points."""

    def __init__(self, f, knots=()):
        self.f = f
        self.knots = tuple(knots)
        self._anchors: dict[int, float] = {}

    def _anchor(self, k: int) -> float:
        if k not in self._anchors:
            res = _improper_head(self.f, 10.0 ** k, self.knots)
            if res.diverged:
                raise quad.DivergentIntegral("cumulative head diverges at 0")
            self._anchors[k] = res.value
        return self._anchors[k]

    def __call__(self, t: float) -> float:
        k = math.floor(math.log10(t))
        base_t = 10.0 ** k
        base = self._anchor(k)
        if t == base_t:
            return base
        inc = quad.integrate_finite(self.f, base_t, t,
                                    max(1e-14, 1e-10 * abs(base)))
        return base + inc.value


def check_hardy_conditions(v: WeightProfile, p: float, alpha: float, n: int,
                           r_grid=None) -> tuple:
    """The two scanned conditions characterizing the three-weight Hardy step.

    With w(t) = t^{-np+p+n-1} v(t), eta(t) = t^{-alpha p+n-1} v(t),
    u(t) = t^{n-1-alpha} (so int_0^t u = t^{n-alpha}/(n-alpha) exactly):

    A:  int_0^r (int_0^t u)^p w(t) t^{-p} dt  <~  int_0^r eta(t) dt
    B:  (int_r^inf w t^{-p})^{1/p}
        * (int_0^r eta (int_0^t u / int_0^t eta)^{p'} dt)^{1/p'}  <~  1

    Returns a pair of ConditionReports (A, B).
    """
    if p <= 1:
        raise ValueError("the scanned conditions need p > 1")
    if not (n - 1) / 2.0 - 1e-12 <= alpha <= n - 1 + 1e-12:
        raise ValueError("alpha outside [(n-1)/2, n-1]")
    rs = default_r_grid() if r_grid is None else np.asarray(r_grid)
    pc = conjugate_value(p)
    vfun = v.v
    knots = vfun.knots() if hasattr(vfun, "knots") else []
    na = n - alpha

    def eta(t):
        t = np.asarray(t, dtype=np.float64)
        return np.asarray(vfun(t)) * t ** (-alpha * p + n - 1)

    def w_over_tp(t):
        t = np.asarray(t, dtype=np.float64)
        return np.asarray(vfun(t)) * t ** (-n * p + n - 1)

    def a_lhs_integrand(t):
        t = np.asarray(t, dtype=np.float64)
        upow = (t ** na / na) ** p
        return upow * np.asarray(vfun(t)) * t ** (-n * p + p + n - 1) * t ** (-p)

    if v.power_law is not None:
        e_eta = v.power_law - alpha * p + n - 1

        def delta(t):
            return t ** (e_eta + 1) / (e_eta + 1) if e_eta > -1 else math.inf
        delta_diverges = e_eta <= -1
    else:
        cum = _CumulativeHead(eta, knots)

        def delta(t):
            return cum(t)
        delta_diverges = False

    lhs_a, rhs_a, lhs_b, rhs_b = [], [], [], []
    for r in rs:
        r = float(r)
        head_a = _improper_head(a_lhs_integrand, r, knots)
        head_eta = _improper_head(eta, r, knots)
        if head_eta.diverged or delta_diverges:
            return (ConditionReport("fails", math.inf, r, [], "numeric_scan",
                                    "DivergentRHS eta"),
                    ConditionReport("fails", math.inf, r, [], "numeric_scan",
                                    "Divergent inner eta integral"))
        if head_a.diverged:
            return (ConditionReport("fails", math.inf, r, [], "numeric_scan",
                                    "DivergentLHS"),
                    ConditionReport("inconclusive", math.nan, r, [],
                                    "numeric_scan", "A diverged first"))
        lhs_a.append(head_a.value)
        rhs_a.append(head_eta.value)

        tail_b = _improper_tail(w_over_tp, r, knots)
        if tail_b.diverged:
            return (_trend_verdict(rs[:len(lhs_a)], lhs_a, rhs_a),
                    ConditionReport("fails", math.inf, r, [], "numeric_scan",
                                    "Divergent tail factor"))
        if not tail_b.converged:
            return (_trend_verdict(rs[:len(lhs_a)], lhs_a, rhs_a),
                    ConditionReport("inconclusive", math.nan, r, [],
                                    "numeric_scan",
                                    "tail factor did not settle"))

        def b_inner(t):
            t = np.asarray(t, dtype=np.float64)
            dvals = np.asarray([delta(float(x)) for x in np.atleast_1d(t)])
            uvals = np.atleast_1d(t) ** na / na
            out = eta(t) * (uvals / dvals) ** pc
            return out.reshape(np.shape(t))

        head_b = _improper_head(b_inner, r, knots)
        if head_b.diverged:
            return (_trend_verdict(rs[:len(lhs_a)], lhs_a, rhs_a),
                    ConditionReport("fails", math.inf, r, [], "numeric_scan",
                                    "Divergent inner factor"))
        lhs_b.append(tail_b.value ** (1.0 / p) * head_b.value ** (1.0 / pc))
        rhs_b.append(1.0)
    rep_a = _trend_verdict(rs, lhs_a, rhs_a)
    rep_b = _trend_verdict(rs, lhs_b, rhs_b)
    return rep_a, rep_b
