"""Small expression language for scalar functions on the positive half-line.

Functions of one variable ``t`` built from arithmetic, elementary functions,
a two-sided indicator ``chi(a,b)`` and a piecewise selector
``piece(threshold, left, right)`` (left branch for ``t <= threshold``).
The literal ``inf`` is accepted so exponent functions can take the value
+infinity; profile/weight constructors elsewhere reject it.

Expressions evaluate with extended-real semantics: division by zero gives a
signed infinity, while any operation that would produce NaN (``0*inf``,
``inf - inf``, ``log`` of a nonpositive number, ``0**negative``, ...) raises
:class:`DomainError` instead of letting NaN propagate.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "DslSyntaxError",
    "UnknownIdentifierError",
    "DomainError",
    "Expr",
    "Lit",
    "Var",
    "Neg",
    "Bin",
    "Call",
    "Chi",
    "Piece",
    "parse",
    "to_source",
    "ScalarFn",
    "validate_props",
    "log_grid",
]


class DslSyntaxError(ValueError):
    """Parse failure; carries the character offset and the expected tokens."""

    def __init__(self, offset: int, expected, found: str = ""):
        self.offset = offset
        self.expected = tuple(expected)
        self.found = found
        exp = " or ".join(self.expected)
        super().__init__(f"syntax error at offset {offset}: expected {exp}"
                         + (f", found {found!r}" if found else ""))


class UnknownIdentifierError(ValueError):
    def __init__(self, name: str, offset: int):
        self.name = name
        self.offset = offset
        super().__init__(f"unknown identifier {name!r} at offset {offset}")


class DomainError(ArithmeticError):
    """Evaluation produced an undefined (NaN) value."""


# ---------------------------------------------------------------------------
# AST


class Expr:
    __slots__ = ()


@dataclass(frozen=True)
class Lit(Expr):
    value: float


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Bin(Expr):
    op: str  # one of + - * / ^
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Call(Expr):
    name: str
    args: tuple = field(default_factory=tuple)


@dataclass(frozen=True)
class Chi(Expr):
    lo: float
    hi: float


@dataclass(frozen=True)
class Piece(Expr):
    threshold: float
    left: Expr
    right: Expr


_UNARY_FUNCS = {"exp", "log", "sin", "cos", "sqrt", "abs"}
_BINARY_FUNCS = {"min", "max"}


# ---------------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN_RE.match(src, pos)
        if m is None or m.end() == pos:
            # skip trailing whitespace before declaring failure
            rest = src[pos:]
            if rest.strip() == "":
                break
            bad = pos + len(rest) - len(rest.lstrip())
            raise DslSyntaxError(bad, ["number", "identifier", "operator"],
                                 src[bad])
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str):
        if not src or not src.strip():
            raise DslSyntaxError(0, ["expression"])
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.peek()
        if kind != "op" or val != op:
            raise DslSyntaxError(off, [repr(op)], val)
        return self.take()

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise DslSyntaxError(off, ["operator", "end of input"], val)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                e = Bin(val, e, self.term())
            else:
                return e

    def term(self) -> Expr:
        e = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                e = Bin(val, e, self.unary())
            else:
                return e

    def unary(self) -> Expr:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            # right associative; unary minus allowed in the exponent
            return Bin("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, val, off = self.take()
        if kind == "num":
            return Lit(float(val))
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        if kind == "ident":
            if val == "t":
                return Var()
            if val == "inf":
                return Lit(math.inf)
            if val in _UNARY_FUNCS:
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(val, (arg,))
            if val in _BINARY_FUNCS:
                self.expect_op("(")
                a = self.expr()
                self.expect_op(",")
                b = self.expr()
                self.expect_op(")")
                return Call(val, (a, b))
            if val == "chi":
                self.expect_op("(")
                a = self._const()
                self.expect_op(",")
                b = self._const()
                self.expect_op(")")
                if not (0.0 <= a <= b):
                    raise DslSyntaxError(off, ["chi bounds with 0 <= a <= b"])
                return Chi(a, b)
            if val == "piece":
                self.expect_op("(")
                thr = self._const()
                self.expect_op(",")
                left = self.expr()
                self.expect_op(",")
                right = self.expr()
                self.expect_op(")")
                return Piece(thr, left, right)
            raise UnknownIdentifierError(val, off)
        raise DslSyntaxError(off, ["number", "identifier", "'('"], val)

    def _const(self) -> float:
        """A constant subexpression (no t), folded to a float at parse time."""
        _, _, off = self.peek()
        e = self.expr()
        if _uses_var(e):
            raise DslSyntaxError(off, ["constant expression"])
        return float(_eval(e, np.float64(1.0)))


def parse(src: str) -> Expr:
    """Parse ``src`` into an AST; raises DslSyntaxError/UnknownIdentifierError."""
    return _Parser(src).parse()


def _uses_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, (Lit, Chi)):
        return False
    if isinstance(e, Neg):
        return _uses_var(e.arg)
    if isinstance(e, Bin):
        return _uses_var(e.left) or _uses_var(e.right)
    if isinstance(e, Call):
        return any(_uses_var(a) for a in e.args)
    if isinstance(e, Piece):
        return _uses_var(e.left) or _uses_var(e.right)
    raise TypeError(e)


# ---------------------------------------------------------------------------
# Printing

def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return repr(float(x))


def to_source(e: Expr) -> str:
    """Render an AST back to parseable text (fully parenthesized)."""
    if isinstance(e, Lit):
        return _fmt(e.value)
    if isinstance(e, Var):
        return "t"
    if isinstance(e, Neg):
        return f"(-{to_source(e.arg)})"
    if isinstance(e, Bin):
        return f"({to_source(e.left)} {e.op} {to_source(e.right)})"
    if isinstance(e, Call):
        args = ", ".join(to_source(a) for a in e.args)
        return f"{e.name}({args})"
    if isinstance(e, Chi):
        return f"chi({_fmt(e.lo)}, {_fmt(e.hi)})"
    if isinstance(e, Piece):
        return (f"piece({_fmt(e.threshold)}, {to_source(e.left)}, "
                f"{to_source(e.right)})")
    raise TypeError(e)


# ---------------------------------------------------------------------------
# Evaluation

def _check_nan(out, what: str):
    if np.any(np.isnan(out)):
        raise DomainError(f"undefined value in {what}")
    return out


def _eval(e: Expr, t):
    """Evaluate on a float64 scalar or ndarray; extended-real semantics."""
    if isinstance(e, Lit):
        return np.full_like(t, e.value) if np.ndim(t) else np.float64(e.value)
    if isinstance(e, Var):
        return t
    if isinstance(e, Neg):
        return -_eval(e.arg, t)
    if isinstance(e, Bin):
        a = _eval(e.left, t)
        b = _eval(e.right, t)
        with np.errstate(all="ignore"):
            if e.op == "+":
                return _check_nan(a + b, "addition")
            if e.op == "-":
                return _check_nan(a - b, "subtraction")
            if e.op == "*":
                return _check_nan(a * b, "multiplication")
            if e.op == "/":
                return _check_nan(a / b, "division")
            if e.op == "^":
                zero_neg = (a == 0.0) & (b < 0.0)
                if np.any(zero_neg):
                    raise DomainError("0 raised to a negative power")
                return _check_nan(np.power(a, b), "power")
        raise TypeError(e.op)
    if isinstance(e, Call):
        if e.name in _BINARY_FUNCS:
            a = _eval(e.args[0], t)
            b = _eval(e.args[1], t)
            return np.minimum(a, b) if e.name == "min" else np.maximum(a, b)
        a = _eval(e.args[0], t)
        with np.errstate(all="ignore"):
            if e.name == "exp":
                return np.exp(a)
            if e.name == "log":
                if np.any(a <= 0.0):
                    raise DomainError("log of a nonpositive value")
                return np.log(a)
            if e.name == "sin":
                return _check_nan(np.sin(a), "sin")  # sin(inf) is NaN
            if e.name == "cos":
                return _check_nan(np.cos(a), "cos")
            if e.name == "sqrt":
                if np.any(a < 0.0):
                    raise DomainError("sqrt of a negative value")
                return np.sqrt(a)
            if e.name == "abs":
                return np.abs(a)
        raise TypeError(e.name)
    if isinstance(e, Chi):
        return ((t >= e.lo) & (t <= e.hi)).astype(np.float64)
    if isinstance(e, Piece):
        mask = t <= e.threshold
        if np.ndim(t) == 0:
            return _eval(e.left if mask else e.right, t)
        out = np.empty_like(t)
        if np.any(mask):
            out[mask] = _eval(e.left, t[mask])
        if not np.all(mask):
            out[~mask] = _eval(e.right, t[~mask])
        return out
    raise TypeError(e)


# ---------------------------------------------------------------------------
# AST transforms (argument substitutions used by the norm/scaling machinery)

def scale_arg(e: Expr, c: float) -> Expr:
    """Rewrite f(t) into f(c*t) for a positive constant c."""
    if c <= 0 or not math.isfinite(c):
        raise ValueError("scale factor must be positive and finite")
    if isinstance(e, Lit):
        return e
    if isinstance(e, Var):
        return Bin("*", Lit(c), Var())
    if isinstance(e, Neg):
        return Neg(scale_arg(e.arg, c))
    if isinstance(e, Bin):
        return Bin(e.op, scale_arg(e.left, c), scale_arg(e.right, c))
    if isinstance(e, Call):
        return Call(e.name, tuple(scale_arg(a, c) for a in e.args))
    if isinstance(e, Chi):
        return Chi(e.lo / c, e.hi / c)
    if isinstance(e, Piece):
        return Piece(e.threshold / c, scale_arg(e.left, c),
                     scale_arg(e.right, c))
    raise TypeError(e)


def invert_arg(e: Expr) -> Expr:
    """Rewrite f(t) into f(1/t).

    Indicator/piecewise knots must be strictly positive; the branch selected
    exactly at a piecewise knot flips side (measure-zero difference).
    """
    if isinstance(e, Lit):
        return e
    if isinstance(e, Var):
        return Bin("/", Lit(1.0), Var())
    if isinstance(e, Neg):
        return Neg(invert_arg(e.arg))
    if isinstance(e, Bin):
        return Bin(e.op, invert_arg(e.left), invert_arg(e.right))
    if isinstance(e, Call):
        return Call(e.name, tuple(invert_arg(a) for a in e.args))
    if isinstance(e, Chi):
        if e.lo <= 0.0 or not math.isfinite(e.hi):
            raise ValueError("invert_arg needs finite positive chi bounds")
        return Chi(1.0 / e.hi, 1.0 / e.lo)
    if isinstance(e, Piece):
        if e.threshold <= 0.0:
            raise ValueError("invert_arg needs a positive piece threshold")
        return Piece(1.0 / e.threshold, invert_arg(e.right),
                     invert_arg(e.left))
    raise TypeError(e)


def contains_inf(e: Expr) -> bool:
    if isinstance(e, Lit):
        return math.isinf(e.value)
    if isinstance(e, (Var, Chi)):
        return False
    if isinstance(e, Neg):
        return contains_inf(e.arg)
    if isinstance(e, Bin):
        return contains_inf(e.left) or contains_inf(e.right)
    if isinstance(e, Call):
        return any(contains_inf(a) for a in e.args)
    if isinstance(e, Piece):
        return contains_inf(e.left) or contains_inf(e.right)
    raise TypeError(e)


def collect_knots(e: Expr):
    """Positive points where the expression may jump (chi bounds, piece knots)."""
    out = set()
    if isinstance(e, Chi):
        out.update(x for x in (e.lo, e.hi) if 0.0 < x < math.inf)
    elif isinstance(e, Piece):
        if 0.0 < e.threshold < math.inf:
            out.add(e.threshold)
        out |= collect_knots(e.left)
        out |= collect_knots(e.right)
    elif isinstance(e, Neg):
        out |= collect_knots(e.arg)
    elif isinstance(e, Bin):
        out |= collect_knots(e.left)
        out |= collect_knots(e.right)
    elif isinstance(e, Call):
        for a in e.args:
            out |= collect_knots(a)
    return out


# ---------------------------------------------------------------------------
# ScalarFn

_KNOWN_PROPS = {"nonincreasing", "nondecreasing", "positive",
                "limit_zero_at_infinity"}


class ScalarFn:
    """A parsed, evaluable function of ``t`` on (0, inf).

    ``declared_props`` are caller assertions (subset of nonincreasing,
    nondecreasing, positive, limit_zero_at_infinity); ``validate_props``
    spot-checks them on a grid. Instances are immutable and safe to share
    across threads.
    """

    __slots__ = ("expr", "declared_props", "source")

    def __init__(self, expr, declared_props=()):
        if isinstance(expr, str):
            object.__setattr__(self, "source", expr)
            expr = parse(expr)
        else:
            object.__setattr__(self, "source", to_source(expr))
        props = frozenset(declared_props)
        bad = props - _KNOWN_PROPS
        if bad:
            raise ValueError(f"unknown declared properties: {sorted(bad)}")
        object.__setattr__(self, "expr", expr)
        object.__setattr__(self, "declared_props", props)

    def __setattr__(self, *a):
        raise AttributeError("ScalarFn is immutable")

    def __call__(self, t):
        arr = np.asarray(t, dtype=np.float64)
        if arr.ndim == 0:
            return float(_eval(self.expr, np.float64(arr)))
        return _eval(self.expr, arr)

    def __repr__(self):
        return f"ScalarFn({self.source!r})"

    def knots(self):
        return sorted(collect_knots(self.expr))

    @property
    def has_inf(self) -> bool:
        return contains_inf(self.expr)

    def scaled_arg(self, c: float, props=None) -> "ScalarFn":
        """t -> f(c*t)."""
        return ScalarFn(scale_arg(self.expr, c),
                        self.declared_props if props is None else props)

    def inverted_arg(self, props=()) -> "ScalarFn":
        """t -> f(1/t)."""
        return ScalarFn(invert_arg(self.expr), props)

    def times_const(self, c: float) -> "ScalarFn":
        return ScalarFn(Bin("*", Lit(float(c)), self.expr),
                        self.declared_props)


def log_grid(lo: float, hi: float, points: int) -> np.ndarray:
    if not (0 < lo < hi) or points < 2:
        raise ValueError("need 0 < lo < hi and points >= 2")
    return np.geomspace(lo, hi, points)


def validate_props(f: ScalarFn, grid) -> list:
    """Spot-check declared properties pairwise on the grid.

    Returns a list of violation records (property, location, values); an
    empty list means every declared property held on the grid.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.size < 2:
        raise ValueError("grid needs at least 2 points")
    grid = np.sort(grid)
    vals = np.asarray([f(float(t)) for t in grid])
    out = []
    props = f.declared_props
    if "positive" in props:
        for t, v in zip(grid, vals):
            if not v > 0.0:
                out.append(("positive", float(t), float(v)))
    slack = 1e-12 * max(1.0, float(np.max(np.abs(vals[np.isfinite(vals)]),
                                          initial=0.0)))
    if "nonincreasing" in props:
        for k in range(len(grid) - 1):
            if vals[k + 1] > vals[k] + slack:
                out.append(("nonincreasing", (float(grid[k]), float(grid[k + 1])),
                            (float(vals[k]), float(vals[k + 1]))))
    if "nondecreasing" in props:
        for k in range(len(grid) - 1):
            if vals[k + 1] < vals[k] - slack:
                out.append(("nondecreasing", (float(grid[k]), float(grid[k + 1])),
                            (float(vals[k]), float(vals[k + 1]))))
    if "limit_zero_at_infinity" in props:
        if not abs(vals[-1]) < 1e-3 * abs(vals[0]):
            out.append(("limit_zero_at_infinity",
                        (float(grid[0]), float(grid[-1])),
                        (float(vals[0]), float(vals[-1]))))
    return out
