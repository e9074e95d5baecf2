"""Expression DSL: grammar, evaluation semantics, transforms, validation."""

import math

import numpy as np
import pytest

from pittlab.funcdsl import (
    Bin, Chi, DomainError, DslSyntaxError, Lit, Neg, Piece,
    ScalarFn, UnknownIdentifierError, Var, log_grid, parse, to_source,
    validate_props,
)


class TestParse:
    def test_single_power(self):
        assert parse("t^2") == Bin("^", Var(), Lit(2.0))

    def test_indicator_times_power(self):
        e = parse("chi(0,1)*t^(-0.5)")
        assert e == Bin("*", Chi(0.0, 1.0),
                        Bin("^", Var(), Neg(Lit(0.5))))

    def test_precedence_and_unary(self):
        # ^ binds tighter than unary minus, * tighter than +
        assert ScalarFn("-t^2")(3.0) == -9.0
        assert ScalarFn("2*t^2")(3.0) == 18.0
        assert ScalarFn("2 - 1/(2*(1+t^2))")(1.0) == 1.75  # 2 - 1/4

    def test_power_right_associative(self):
        assert ScalarFn("t^2^3")(2.0) == 2.0 ** 8

    def test_unary_in_exponent(self):
        assert ScalarFn("t^-2")(2.0) == 0.25

    def test_whitespace_insensitive(self):
        a = ScalarFn("min( t , 2*t )")
        b = ScalarFn("min(t,2*t)")
        assert a(1.7) == b(1.7)

    def test_syntax_error_offset(self):
        with pytest.raises(DslSyntaxError) as ei:
            parse("t + * 2")
        assert ei.value.offset == 4
        assert ei.value.expected

    def test_unknown_identifier(self):
        with pytest.raises(UnknownIdentifierError) as ei:
            parse("frob(t)")
        assert ei.value.name == "frob"

    def test_empty_source_rejected(self):
        with pytest.raises(DslSyntaxError):
            parse("   ")

    def test_constant_arguments_folded(self):
        e = parse("chi(2*0.25, 1+1)")
        assert e == Chi(0.5, 2.0)


class TestEval:
    def test_square(self):
        assert ScalarFn("t^2")(3.0) == 9.0

    def test_indicator_outside_support(self):
        assert ScalarFn("chi(0,1)")(2.0) == 0.0

    def test_rational_limit_values(self):
        f = ScalarFn("2 - 1/(2*(1+t^2))")
        assert abs(f(1e-9) - 1.5) < 1e-12
        assert abs(f(1e6) - 2.0) < 1e-9

    def test_indicator_closed_ends(self):
        f = ScalarFn("chi(0.5,1)")
        assert f(0.5) == 1.0 and f(1.0) == 1.0
        assert f(0.4999999) == 0.0 and f(1.0000001) == 0.0

    def test_piece_left_branch_at_knot(self):
        f = ScalarFn("piece(1, 10, 20)")
        assert f(1.0) == 10.0
        assert f(1.0000000001) == 20.0

    def test_division_by_zero_gives_inf(self):
        assert ScalarFn("1/(t-2)")(2.0) == math.inf
        assert ScalarFn("(0-1)/(t-2)")(2.0) == -math.inf

    def test_inf_literal_through_min_max(self):
        assert ScalarFn("min(inf, t)")(3.0) == 3.0
        assert ScalarFn("max(inf, t)")(3.0) == math.inf

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            ScalarFn("log(t-5)")(1.0)
        with pytest.raises(DomainError):
            ScalarFn("sqrt(t-5)")(1.0)
        with pytest.raises(DomainError):
            ScalarFn("(t-1)^(-0.5)")(1.0)  # 0^negative

    def test_no_silent_nan(self):
        # inf - inf must raise, never propagate NaN
        with pytest.raises(DomainError):
            ScalarFn("1/(t-1) - 1/(t-1)^2")(1.0)

    def test_unselected_piece_branch_not_evaluated(self):
        f = ScalarFn("piece(1, 1, log(t-1))")
        assert f(0.5) == 1.0  # right branch would raise at this t

    def test_vectorized_matches_scalar(self):
        f = ScalarFn("chi(0,1)*t^(-0.5) + sin(t)")
        ts = np.array([0.3, 0.9, 1.5, 7.0])
        vec = f(ts)
        assert vec.shape == ts.shape
        for t, v in zip(ts, vec):
            assert v == f(float(t))


def _random_ast(rng, depth):
    """Random AST of bounded depth over the full grammar."""
    if depth == 0:
        k = rng.integers(0, 3)
        if k == 0:
            return Lit(float(np.round(rng.uniform(0, 4), 3)))
        if k == 1:
            return Var()
        a = float(np.round(rng.uniform(0, 2), 3))
        return Chi(a, a + float(np.round(rng.uniform(0, 2), 3)))
    k = rng.integers(0, 8)
    if k < 4:
        op = "+-*/"[rng.integers(0, 4)]
        return Bin(op, _random_ast(rng, depth - 1), _random_ast(rng, depth - 1))
    if k == 4:
        return Neg(_random_ast(rng, depth - 1))
    if k == 5:
        # keep exponents tame so evaluation stays finite
        return Bin("^", _random_ast(rng, depth - 1),
                   Lit(float(rng.integers(0, 3))))
    if k == 6:
        from pittlab.funcdsl import Call
        name = ["exp", "sin", "cos", "abs"][rng.integers(0, 4)]
        arg = _random_ast(rng, depth - 1)
        if name == "exp":
            arg = Neg(Call("abs", (arg,)))
        return Call(name, (arg,))
    thr = float(np.round(rng.uniform(0.2, 3), 3))
    return Piece(thr, _random_ast(rng, depth - 1), _random_ast(rng, depth - 1))


def test_print_parse_roundtrip_random():
    """parse(print(ast)) evaluates identically at random points (100 ASTs)."""
    rng = np.random.default_rng(42)
    pts = rng.uniform(0.01, 10.0, size=20)
    checked = 0
    for _ in range(100):
        ast = _random_ast(rng, int(rng.integers(1, 7)))
        back = parse(to_source(ast))
        f0 = ScalarFn(ast)
        f1 = ScalarFn(back)
        for t in pts:
            try:
                a = f0(float(t))
            except DomainError:
                with pytest.raises(DomainError):
                    f1(float(t))
                continue
            b = f1(float(t))
            assert a == b or (math.isnan(a) and math.isnan(b))
            checked += 1
    assert checked > 500


class TestTransforms:
    def test_scaled_arg(self):
        f = ScalarFn("chi(0,1)*t^2")
        g = f.scaled_arg(4.0)  # g(t) = f(4t)
        assert g(0.2) == f(0.8)
        assert g.knots() == [0.25]

    def test_inverted_arg(self):
        f = ScalarFn("piece(2, t, 1/t)")
        g = f.inverted_arg()  # g(t) = f(1/t)
        for t in (0.3, 0.75, 4.0):
            assert g(t) == pytest.approx(f(1.0 / t))

    def test_times_const(self):
        f = ScalarFn("exp(-t)")
        assert f.times_const(3.0)(2.0) == pytest.approx(3 * math.exp(-2))

    def test_immutability(self):
        f = ScalarFn("t")
        with pytest.raises(AttributeError):
            f.expr = None


class TestValidateProps:
    def test_decaying_power_ok(self):
        f = ScalarFn("t^(-1)", ("nonincreasing", "positive"))
        assert validate_props(f, log_grid(0.1, 100, 41)) == []

    def test_increasing_flagged(self):
        f = ScalarFn("t", ("nonincreasing",))
        v = validate_props(f, log_grid(0.1, 100, 41))
        assert v and v[0][0] == "nonincreasing"

    def test_hump_inside_support_flagged(self):
        # sqrt growth inside (0,1) violates nonincreasing
        f = ScalarFn("t^0.5*chi(0,1)", ("nonincreasing",))
        v = validate_props(f, log_grid(0.1, 10, 61))
        assert any(pair[1][1] <= 1.0 for pair in v if pair[0] == "nonincreasing")

    def test_limit_zero(self):
        good = ScalarFn("exp(-t)", ("limit_zero_at_infinity",))
        assert validate_props(good, log_grid(0.1, 50, 21)) == []
        bad = ScalarFn("1 + exp(-t)", ("limit_zero_at_infinity",))
        assert validate_props(bad, log_grid(0.1, 50, 21))
