"""Complex scalars and first-order forward-mode jets over C^n.

A :class:`Jet` carries a value together with its gradient with respect to
``n`` complex coordinates.  Every residual in the package is computed by
pushing jets through expressions, so derivatives are exact up to roundoff.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

Number = Union[int, float, complex]


class DimensionError(ValueError):
    """Operands live in spaces of different dimension."""


class DomainError(ValueError):
    """An analytic function was applied outside its domain."""


def cx(re: float, im: float = 0.0) -> complex:
    """Build a finite complex scalar; NaN and infinities are rejected."""
    z = complex(re, im)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {z!r}")
    return z


def as_cx(x: Number) -> complex:
    z = complex(x)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite complex value {z!r}")
    return z


@dataclass(frozen=True)
class Jet:
    value: complex
    gradient: tuple[complex, ...]

    @property
    def dim(self) -> int:
        return len(self.gradient)

    # operator sugar; the named functions below are the reference definitions
    def __add__(self, other: Union["Jet", Number]) -> "Jet":
        return jet_add(self, _lift(other, self.dim))

    __radd__ = __add__

    def __sub__(self, other: Union["Jet", Number]) -> "Jet":
        return jet_add(self, jet_neg(_lift(other, self.dim)))

    def __rsub__(self, other: Number) -> "Jet":
        return jet_add(_lift(other, self.dim), jet_neg(self))

    def __mul__(self, other: Union["Jet", Number]) -> "Jet":
        if isinstance(other, Jet):
            return jet_mul(self, other)
        return jet_scale(self, complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Jet", Number]) -> "Jet":
        return jet_div(self, _lift(other, self.dim))

    def __rtruediv__(self, other: Number) -> "Jet":
        return jet_div(_lift(other, self.dim), self)

    def __neg__(self) -> "Jet":
        return jet_neg(self)

    def __pow__(self, k: int) -> "Jet":
        return jet_pow_int(self, k)


def _lift(x: Union[Jet, Number], n: int) -> Jet:
    if isinstance(x, Jet):
        return x
    return jet_const(complex(x), n)


def _check_dims(a: Jet, b: Jet) -> None:
    if len(a.gradient) != len(b.gradient):
        raise DimensionError(
            f"jet dimensions differ: {len(a.gradient)} vs {len(b.gradient)}")


def jet_const(value: Number, n: int) -> Jet:
    return Jet(complex(value), (0j,) * n)


def jet_var(j: int, value: Number, n: int) -> Jet:
    """Coordinate jet: the j-th coordinate function evaluated at ``value``."""
    if not 0 <= j < n:
        raise IndexError(f"coordinate index {j} out of range for dimension {n}")
    grad = [0j] * n
    grad[j] = 1 + 0j
    return Jet(complex(value), tuple(grad))


def jet_vars(values: Sequence[Number]) -> list[Jet]:
    """All coordinate jets at the point ``values``."""
    n = len(values)
    return [jet_var(j, v, n) for j, v in enumerate(values)]


def jet_add(a: Jet, b: Jet) -> Jet:
    _check_dims(a, b)
    return Jet(a.value + b.value,
               tuple(x + y for x, y in zip(a.gradient, b.gradient)))


def jet_neg(a: Jet) -> Jet:
    return Jet(-a.value, tuple(-g for g in a.gradient))


def jet_scale(a: Jet, c: complex) -> Jet:
    return Jet(c * a.value, tuple(c * g for g in a.gradient))


def jet_mul(a: Jet, b: Jet) -> Jet:
    """Product rule."""
    _check_dims(a, b)
    av, bv = a.value, b.value
    return Jet(av * bv,
               tuple(av * gb + bv * ga for ga, gb in zip(a.gradient, b.gradient)))


def jet_div(a: Jet, b: Jet) -> Jet:
    _check_dims(a, b)
    if b.value == 0:
        raise ZeroDivisionError("jet division by a jet with zero value")
    q = a.value / b.value
    return Jet(q, tuple((ga - q * gb) / b.value
                        for ga, gb in zip(a.gradient, b.gradient)))


def jet_pow_int(a: Jet, k: int) -> Jet:
    """Integer power by repeated squaring; ``k = 0`` gives the constant 1."""
    if k < 0:
        raise ValueError("negative powers are not entire")
    result = jet_const(1, a.dim)
    base = a
    first = True
    while k:
        if k & 1:
            result = base if first else jet_mul(result, base)
            first = False
        k >>= 1
        if k:
            base = jet_mul(base, base)
    return result


def _log(z: complex) -> complex:
    if z == 0:
        raise DomainError("log of zero")
    return cmath.log(z)


def _dlog(z: complex) -> complex:
    return 1 / z


# name -> (function, derivative)
ANALYTIC: dict[str, tuple[Callable[[complex], complex], Callable[[complex], complex]]] = {
    "exp": (cmath.exp, cmath.exp),
    "sin": (cmath.sin, cmath.cos),
    "cos": (cmath.cos, lambda z: -cmath.sin(z)),
    "sinh": (cmath.sinh, cmath.cosh),
    "cosh": (cmath.cosh, cmath.sinh),
    "log": (_log, _dlog),
}


def jet_analytic(name: str, a: Jet) -> Jet:
    """Apply a built-in analytic function with the chain rule.

    ``log`` is the principal branch and raises :class:`DomainError` at 0.
    """
    try:
        f, df = ANALYTIC[name]
    except KeyError:
        raise ValueError(f"unknown analytic function {name!r}") from None
    v = f(a.value)
    d = df(a.value)
    return Jet(v, tuple(d * g for g in a.gradient))


def jet_sum(terms: Iterable[Jet], n: int) -> Jet:
    total = jet_const(0, n)
    for t in terms:
        total = jet_add(total, t)
    return total
