"""Bessel functions of the first kind J_nu for nu >= -1/2, and their zeros.

Evaluation strategy per the accuracy contract (relative error <= 1e-10 for
t <= 1e4, absolute ~1e-12 near zeros):

* nu = +-1/2: trigonometric closed forms (the large-argument expansion
  terminates, so it is exact for all t > 0).
* t below the crossover t*(nu) = min(max(18, 2 nu^2 + 10), 35): ascending
  power series.  The alternating series cancels like e^t, so for t > 6 the
  term recurrence and accumulation run in double-double (~31 digit)
  arithmetic; plain float64 suffices below.  The cap at 35 keeps the
  cancellation well inside the double-double budget.
* t >= t*(nu): Hankel-type large-argument expansion (cosine leading term
  plus correction terms), truncated adaptively at the smallest term.

Orders above 8 are rejected: there the two branches no longer overlap at
usable accuracy (this artifact only ever needs nu <= ~4).  All entry points
accept scalars or numpy arrays of t.
"""

from __future__ import annotations

import math
import threading

import numpy as np

__all__ = ["OrderOutOfRange", "bessel_j", "ZeroTable", "zeros",
           "check_growth_bounds"]

_NU_MAX = 8.0


class OrderOutOfRange(ValueError):
    pass


def _check_order(nu: float) -> float:
    nu = float(nu)
    if not (nu >= -0.5):
        raise OrderOutOfRange(f"order {nu} < -1/2 not supported")
    if nu > _NU_MAX:
        raise OrderOutOfRange(f"order {nu} > {_NU_MAX} not supported")
    return nu


def _crossover(nu: float) -> float:
    return min(max(18.0, 2.0 * nu * nu + 10.0), 35.0)


# ---------------------------------------------------------------------------
# double-double primitives (vectorized; Dekker/Knuth error-free transforms)

_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _two_prod(a, b):
    p = a * b
    ca = _SPLIT * a
    ah = ca - (ca - a)
    al = a - ah
    cb = _SPLIT * b
    bh = cb - (cb - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(ah, al, bh, bl):
    s, e = _two_sum(ah, bh)
    e = e + (al + bl)
    hi = s + e
    return hi, e - (hi - s)


def _dd_mul(ah, al, bh, bl):
    p, e = _two_prod(ah, bh)
    e = e + (ah * bl + al * bh)
    hi = p + e
    return hi, e - (hi - p)


def _dd_div(ah, al, bh, bl):
    q1 = ah / bh
    # remainder a - q1*b, in double-double
    p, pe = _two_prod(q1, bh)
    r_hi, r_lo = _dd_add(ah, al, -p, -(pe + q1 * bl))
    q2 = r_hi / bh
    hi = q1 + q2
    return hi, q2 - (hi - q1)


# ---------------------------------------------------------------------------
# branches

def _series_plain(nu, t):
    """Ascending series in float64; adequate for t <= ~6."""
    y = 0.25 * t * t
    term = np.ones_like(t)
    acc = np.ones_like(t)
    top = np.ones_like(t)
    for k in range(1, 40):
        term = term * (-y) / (k * (k + nu))
        acc = acc + term
        np.maximum(top, np.abs(term), out=top)
        if np.all(np.abs(term) <= 1e-20 * top):
            break
    pref = np.exp(nu * np.log(0.5 * t) - math.lgamma(nu + 1.0))
    return pref * acc


def _series_dd(nu, t):
    """Ascending series with double-double recurrence and accumulation."""
    yh, yl = _two_prod(t, t)
    yh *= 0.25
    yl *= 0.25
    th = np.ones_like(t)
    tl = np.zeros_like(t)
    sh = np.ones_like(t)
    sl = np.zeros_like(t)
    top = np.ones_like(t)
    kmax = int(2.2 * float(np.max(t))) + 30
    for k in range(1, kmax):
        mh, ml = _two_sum(float(k), nu)          # exact split of k + nu
        mh, ml = _dd_mul(mh, ml, float(k), 0.0)  # k*(k+nu)
        th, tl = _dd_mul(th, tl, yh, yl)
        th, tl = _dd_div(th, tl, mh, ml)
        th = -th
        tl = -tl
        sh, sl = _dd_add(sh, sl, th, tl)
        np.maximum(top, np.abs(th), out=top)
        if np.all(np.abs(th) <= 1e-26 * top):
            break
    pref = np.exp(nu * np.log(0.5 * t) - math.lgamma(nu + 1.0))
    return pref * (sh + sl)


def _asymptotic(nu, t):
    """Hankel expansion; terms truncated at the smallest one per element."""
    mu = 4.0 * nu * nu
    p_sum = np.ones_like(t)
    q_sum = np.zeros_like(t)
    term = np.ones_like(t)
    active = np.ones(t.shape, dtype=bool)
    eight_t = 8.0 * t
    for k in range(1, 40):
        new = term * (mu - (2 * k - 1) ** 2) / (k * eight_t)
        grew = np.abs(new) >= np.abs(term)
        active = active & ~grew & (np.abs(term) > 1e-18)
        if not np.any(active):
            break
        contrib = np.where(active, new, 0.0)
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            q_sum = q_sum + sign * contrib
        else:
            p_sum = p_sum + sign * contrib
        term = np.where(active, new, term)
    omega = t - (0.5 * nu + 0.25) * math.pi
    amp = np.sqrt(2.0 / (math.pi * t))
    return amp * (np.cos(omega) * p_sum - np.sin(omega) * q_sum)


def _j_half(t, sign):
    """J_{1/2} (sign=+1) or J_{-1/2} (sign=-1), exact closed forms."""
    amp = np.sqrt(2.0 / (math.pi * t))
    return amp * (np.sin(t) if sign > 0 else np.cos(t))


def bessel_j(nu: float, t):
    """J_nu(t) for nu >= -1/2, t >= 0 (scalar or array)."""
    nu = _check_order(nu)
    arr = np.asarray(t, dtype=np.float64)
    scalar = arr.ndim == 0
    x = np.atleast_1d(arr).copy()
    if np.any(x < 0.0):
        raise ValueError("argument must be nonnegative")
    out = np.empty_like(x)

    zero = x == 0.0
    if np.any(zero):
        if nu == 0.0:
            out[zero] = 1.0
        elif nu > 0.0:
            out[zero] = 0.0
        else:
            out[zero] = np.inf
    pos = ~zero
    if np.any(pos):
        xp = x[pos]
        if nu == 0.5 or nu == -0.5:
            res = _j_half(xp, 1 if nu > 0 else -1)
        else:
            res = np.empty_like(xp)
            tstar = _crossover(nu)
            lo = xp <= 6.0
            mid = (xp > 6.0) & (xp < tstar)
            hi = xp >= tstar
            if np.any(lo):
                res[lo] = _series_plain(nu, xp[lo])
            if np.any(mid):
                res[mid] = _series_dd(nu, xp[mid])
            if np.any(hi):
                res[hi] = _asymptotic(nu, xp[hi])
        out[pos] = res
    if scalar:
        return float(out[0])
    return out.reshape(arr.shape)


def _jprime(nu: float, t):
    """dJ_nu/dt via J_nu' = (nu/t) J_nu - J_{nu+1}."""
    return (nu / t) * bessel_j(nu, t) - bessel_j(nu + 1.0, t)


# ---------------------------------------------------------------------------
# zeros

class ZeroTable:
    """Ascending positive zeros of J_nu, extended lazily and thread-safely.

    Concurrent reads of already-computed entries are safe; extension is
    serialized by an internal lock.
    """

    def __init__(self, nu: float):
        self.nu = _check_order(nu)
        self._zeros: list[float] = []
        self._lock = threading.Lock()

    def __len__(self):
        return len(self._zeros)

    def get(self, k: int) -> float:
        """k-th positive zero, 1-based."""
        if k < 1:
            raise ValueError("zero index is 1-based")
        if k > len(self._zeros):
            self.extend(k)
        return self._zeros[k - 1]

    def upto(self, k: int) -> np.ndarray:
        if k > len(self._zeros):
            self.extend(k)
        return np.asarray(self._zeros[:k])

    def extend(self, count: int):
        with self._lock:
            if count <= len(self._zeros):
                return
            nu = self.nu
            start = self._zeros[-1] + 1.0 if self._zeros else max(0.05, 0.8 * nu)
            # McMahon-type guess for the last zero wanted, padded
            guess_last = (count + 0.5 * nu - 0.25) * math.pi
            stop = max(guess_last + 2 * math.pi, start + 2 * math.pi)
            while len(self._zeros) < count:
                grid = np.arange(start, stop, 0.4)
                vals = bessel_j(nu, grid)
                sgn = np.sign(vals)
                flip = np.nonzero(sgn[:-1] * sgn[1:] < 0)[0]
                if flip.size:
                    lo = grid[flip]
                    hi = grid[flip + 1]
                    roots = self._refine(lo, hi)
                    self._zeros.extend(float(r) for r in roots)
                start = stop - 0.2
                stop = start + 4 * math.pi
            del self._zeros[count:]

    def _refine(self, lo, hi):
        nu = self.nu
        flo = bessel_j(nu, lo)
        for _ in range(50):
            mid = 0.5 * (lo + hi)
            fm = bessel_j(nu, mid)
            left = flo * fm <= 0.0
            hi = np.where(left, mid, hi)
            lo = np.where(left, lo, mid)
            flo = np.where(left, flo, fm)
        root = 0.5 * (lo + hi)
        for _ in range(2):  # Newton polish
            root = root - bessel_j(nu, root) / _jprime(nu, root)
        return root


_tables: dict[float, ZeroTable] = {}
_tables_lock = threading.Lock()


def zeros(nu: float, k: int) -> np.ndarray:
    """First k positive zeros of J_nu (ascending), |J_nu| <= 1e-12 at each."""
    if k < 1:
        raise ValueError("k must be >= 1")
    nu = _check_order(nu)
    with _tables_lock:
        table = _tables.setdefault(nu, ZeroTable(nu))
    return table.upto(k)


def check_growth_bounds(nu: float, t_grid) -> float:
    """Empirical constant sup |J_nu(t)| * max(t^{1/2}, t^{-nu}) over the grid.

    Finite, grid-stable values witness the standard bounds
    |J_nu| <~ t^{-1/2} and |J_nu| <~ t^{nu}.
    """
    nu = _check_order(nu)
    t = np.asarray(t_grid, dtype=np.float64)
    if np.any(t <= 0.0):
        raise ValueError("grid must be positive")
    vals = np.abs(bessel_j(nu, t))
    weight = np.maximum(np.sqrt(t), t ** (-nu))
    return float(np.max(vals * weight))
