import random

import pytest
from hypothesis import given, strategies as st

from exprgen import random_expr, random_point
from waringpde.cxjet import DimensionError
from waringpde.expr import (Const, Cos, Exp, Mul, PowInt, Sin, Var, arity,
                            depth, eval_jet, eval_value, format_complex,
                            gradient, linear, substitute, to_text)
from waringpde.parser import ParseError, UnknownIdentifier, parse_complex, parse_expr


def test_linear_gradient():
    e = linear([2, 3j, -1])
    assert gradient(e, [1, 2, 3]) == (2, 3j, -1)
    assert eval_value(e, [1, 1, 1]) == 2 + 3j - 1


def test_arity_and_depth():
    e = Var(0) * Sin(Var(2))
    assert arity(e) == 3
    assert depth(e) == 3
    assert arity(Const(1)) == 0


def test_eval_needs_enough_coordinates():
    with pytest.raises(DimensionError):
        eval_value(Var(2), [1, 2])


def test_power_zero_is_one():
    assert eval_jet(PowInt(Var(0), 0), [0]).value == 1
    assert eval_jet(PowInt(Var(0), 0), [0]).gradient == (0,)


def test_substitute():
    e = Var(0) * Var(1)
    s = substitute(e, [Var(1) + Var(2), Const(2)])
    assert eval_value(s, [0, 1, 2]) == 6
    with pytest.raises(DimensionError):
        substitute(e, [Var(0)])


def test_values_agree_with_jets():
    rng = random.Random(7)
    for _ in range(100):
        n = rng.randint(1, 3)
        e = random_expr(rng, n, 5)
        z = random_point(rng, n)
        try:
            assert eval_value(e, z) == eval_jet(e, z).value
        except OverflowError:
            pass


def test_format_complex():
    assert format_complex(0.5 - 1.5j) == "(0.5-1.5i)"
    assert format_complex(2) == "(2.0+0.0i)"


# --- parser -------------------------------------------------------------------

def test_parse_precedence():
    e = parse_expr("1 + 2*z1^2", 1)
    assert eval_value(e, [3]) == 19
    assert eval_value(parse_expr("-z1^2", 1), [3]) == -9
    assert eval_value(parse_expr("(z1 + z2)*z2", 2), [1, 2]) == 6


def test_parse_imaginary_literals():
    assert parse_complex("3i") == 3j
    assert parse_complex("i") == 1j
    assert parse_complex("(0.5-1.5i)") == 0.5 - 1.5j
    assert parse_complex("-152") == -152


def test_parse_functions_and_alias():
    e = parse_expr("sin(w) + cosh(2*w)", 1)
    assert eval_value(e, [0]) == 1
    with pytest.raises(UnknownIdentifier):
        parse_expr("w", 2)


@pytest.mark.parametrize("text, pos", [
    ("z1/2", 2), ("z1^-1", 3), ("z1^1.5", 3), ("z3", 0), ("foo(z1)", 0), ("(z1", 3), ("z1 +", 4),
])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as err:
        parse_expr(text, 2)
    assert err.value.position == pos


def test_printer_round_trip_fixed():
    e = Exp(Var(0) * Const(0.25 - 1j)) + Mul(Cos(Var(1)), PowInt(Var(0) - Var(1), 3))
    again = parse_expr(to_text(e), 2)
    z = [0.3 + 0.2j, -0.7j]
    assert eval_value(again, z) == pytest.approx(eval_value(e, z), rel=1e-15)


@given(st.integers(0, 10_000))
def test_printer_round_trip_random(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    e = random_expr(rng, n, 5)
    again = parse_expr(to_text(e), n)
    z = random_point(rng, n)
    try:
        a, b = eval_value(e, z), eval_value(again, z)
    except OverflowError:
        return
    assert abs(a - b) <= 1e-12 * max(1, abs(a))
