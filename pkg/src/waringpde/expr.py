"""Closed expression trees for entire functions of several complex variables.

The node set is deliberately small: no division and no fractional powers,
so every expression that can be built is entire.  Expressions evaluate on
plain complex points (:func:`eval_value`) and on jets (:func:`eval_jet`).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from functools import reduce
from typing import Sequence, Union

from .cxjet import (ANALYTIC, DimensionError, Jet, jet_add, jet_analytic,
                    jet_const, jet_mul, jet_neg, jet_pow_int, jet_vars)

FUNCTIONS = ("exp", "sin", "cos", "sinh", "cosh")


class Expr:
    """Base class; concrete nodes are the frozen dataclasses below."""

    __slots__ = ()

    def __add__(self, other: "ExprLike") -> "Expr":
        return Add(self, lift(other))

    def __radd__(self, other: "ExprLike") -> "Expr":
        return Add(lift(other), self)

    def __sub__(self, other: "ExprLike") -> "Expr":
        return Add(self, Neg(lift(other)))

    def __rsub__(self, other: "ExprLike") -> "Expr":
        return Add(lift(other), Neg(self))

    def __mul__(self, other: "ExprLike") -> "Expr":
        return Mul(self, lift(other))

    def __rmul__(self, other: "ExprLike") -> "Expr":
        return Mul(lift(other), self)

    def __neg__(self) -> "Expr":
        return Neg(self)

    def __pow__(self, k: int) -> "Expr":
        return PowInt(self, k)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True, eq=True, repr=True)
class Var(Expr):
    index: int

    def __post_init__(self):
        if self.index < 0:
            raise ValueError("variable index must be non-negative")


@dataclass(frozen=True)
class Const(Expr):
    value: complex

    def __post_init__(self):
        v = complex(self.value)
        if not (cmath.isfinite(v)):
            raise ValueError(f"non-finite constant {v!r}")
        object.__setattr__(self, "value", v)


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class PowInt(Expr):
    base: Expr
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 0:
            raise ValueError(f"PowInt exponent must be a non-negative integer, got {self.k!r}")


@dataclass(frozen=True)
class Func(Expr):
    """One of the entire functions exp, sin, cos, sinh, cosh."""

    name: str
    arg: Expr

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unknown function {self.name!r}")


ExprLike = Union[Expr, int, float, complex]


def lift(x: ExprLike) -> Expr:
    if isinstance(x, Expr):
        return x
    return Const(complex(x))


def Exp(a: ExprLike) -> Expr:
    return Func("exp", lift(a))


def Sin(a: ExprLike) -> Expr:
    return Func("sin", lift(a))


def Cos(a: ExprLike) -> Expr:
    return Func("cos", lift(a))


def Sinh(a: ExprLike) -> Expr:
    return Func("sinh", lift(a))


def Cosh(a: ExprLike) -> Expr:
    return Func("cosh", lift(a))


ZERO = Const(0j)
ONE = Const(1 + 0j)


def linear(coeffs: Sequence[complex], offset: complex = 0j) -> Expr:
    """``offset + sum_j coeffs[j] * z_j`` as an expression."""
    terms: list[Expr] = [Mul(Const(c), Var(j)) for j, c in enumerate(coeffs)]
    if offset != 0 or not terms:
        terms.insert(0, Const(offset))
    return reduce(Add, terms)


def total(terms: Sequence[Expr]) -> Expr:
    if not terms:
        return ZERO
    return reduce(Add, terms)


def arity(e: Expr) -> int:
    """Smallest dimension the expression can be evaluated in."""
    if isinstance(e, Var):
        return e.index + 1
    if isinstance(e, Const):
        return 0
    if isinstance(e, (Add, Mul)):
        return max(arity(e.left), arity(e.right))
    if isinstance(e, (Neg, Func)):
        return arity(e.arg)
    if isinstance(e, PowInt):
        return arity(e.base)
    raise TypeError(f"not an expression node: {e!r}")


def depth(e: Expr) -> int:
    if isinstance(e, (Var, Const)):
        return 1
    if isinstance(e, (Add, Mul)):
        return 1 + max(depth(e.left), depth(e.right))
    if isinstance(e, (Neg, Func)):
        return 1 + depth(e.arg)
    if isinstance(e, PowInt):
        return 1 + depth(e.base)
    raise TypeError(f"not an expression node: {e!r}")


def _check_point(e: Expr, n: int) -> None:
    need = arity(e)
    if need > n:
        raise DimensionError(f"expression uses z{need} but point has dimension {n}")


def eval_value(e: Expr, z: Sequence[complex]) -> complex:
    _check_point(e, len(z))
    return _value(e, [complex(v) for v in z])


def _value(e: Expr, z: list[complex]) -> complex:
    if isinstance(e, Var):
        return z[e.index]
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Add):
        return _value(e.left, z) + _value(e.right, z)
    if isinstance(e, Mul):
        return _value(e.left, z) * _value(e.right, z)
    if isinstance(e, Neg):
        return -_value(e.arg, z)
    if isinstance(e, PowInt):
        # same multiplication sequence as jet_pow_int, so values agree bit for bit
        return jet_pow_int(Jet(_value(e.base, z), ()), e.k).value
    if isinstance(e, Func):
        return ANALYTIC[e.name][0](_value(e.arg, z))
    raise TypeError(f"not an expression node: {e!r}")


def eval_jet(e: Expr, z: Sequence[complex]) -> Jet:
    """Value and exact gradient of ``e`` at ``z``."""
    _check_point(e, len(z))
    return _jet(e, jet_vars(z), len(z))


def eval_jet_at(e: Expr, xs: Sequence[Jet]) -> Jet:
    """Evaluate with caller-supplied jets bound to the variables (chain rule)."""
    if not xs:
        _check_point(e, 0)
        return _jet(e, [], 0)
    _check_point(e, len(xs))
    return _jet(e, list(xs), xs[0].dim)


def _jet(e: Expr, xs: list[Jet], n: int) -> Jet:
    if isinstance(e, Var):
        return xs[e.index]
    if isinstance(e, Const):
        return jet_const(e.value, n)
    if isinstance(e, Add):
        return jet_add(_jet(e.left, xs, n), _jet(e.right, xs, n))
    if isinstance(e, Mul):
        return jet_mul(_jet(e.left, xs, n), _jet(e.right, xs, n))
    if isinstance(e, Neg):
        return jet_neg(_jet(e.arg, xs, n))
    if isinstance(e, PowInt):
        return jet_pow_int(_jet(e.base, xs, n), e.k)
    if isinstance(e, Func):
        return jet_analytic(e.name, _jet(e.arg, xs, n))
    raise TypeError(f"not an expression node: {e!r}")


def gradient(e: Expr, z: Sequence[complex]) -> tuple[complex, ...]:
    return eval_jet(e, z).gradient


def substitute(e: Expr, bindings: Sequence[Expr]) -> Expr:
    """Compose: replace ``z_k`` in ``e`` by ``bindings[k]``."""
    need = arity(e)
    if len(bindings) < need:
        raise DimensionError(
            f"expression needs {need} bindings, got {len(bindings)}")
    return _subst(e, [lift(b) for b in bindings])


def _subst(e: Expr, b: list[Expr]) -> Expr:
    if isinstance(e, Var):
        return b[e.index]
    if isinstance(e, Const):
        return e
    if isinstance(e, Add):
        return Add(_subst(e.left, b), _subst(e.right, b))
    if isinstance(e, Mul):
        return Mul(_subst(e.left, b), _subst(e.right, b))
    if isinstance(e, Neg):
        return Neg(_subst(e.arg, b))
    if isinstance(e, PowInt):
        return PowInt(_subst(e.base, b), e.k)
    if isinstance(e, Func):
        return Func(e.name, _subst(e.arg, b))
    raise TypeError(f"not an expression node: {e!r}")


# --- printing -----------------------------------------------------------

_PREC = {Add: 1, Mul: 2, Neg: 3, PowInt: 4}


def format_complex(v: complex) -> str:
    """Literal in the ``(a+bi)`` grammar form, exact under repr round-trip."""
    re, im = repr(float(v.real)), repr(float(abs(v.imag)))
    sign = "-" if (v.imag < 0 or (v.imag == 0 and str(v.imag).startswith("-"))) else "+"
    return f"({re}{sign}{im}i)"


def to_text(e: Expr) -> str:
    """Print in the textual grammar accepted by :func:`waringpde.parser.parse_expr`."""
    return _text(e, 0)


def _text(e: Expr, outer: int) -> str:
    if isinstance(e, Var):
        return f"z{e.index + 1}"
    if isinstance(e, Const):
        return format_complex(e.value)
    if isinstance(e, Func):
        return f"{e.name}({_text(e.arg, 0)})"
    prec = _PREC[type(e)]
    if isinstance(e, Add):
        s = f"{_text(e.left, 1)} + {_text(e.right, 2)}"
    elif isinstance(e, Mul):
        s = f"{_text(e.left, 2)}*{_text(e.right, 3)}"
    elif isinstance(e, Neg):
        s = f"-{_text(e.arg, 4)}"
    else:
        s = f"{_text(e.base, 5)}^{e.k}"
    return f"({s})" if prec < outer else s
