"""Ready-made instances: the eikonal and Waring examples with their constants.

The ``(a, b)`` pair shared by the cubic-exponent examples comes from the real
root ``b`` of ``91 k**3 - 100 k**2 + 80 k - 152`` and ``a = (25 - 16 b)/9``.
Those constants satisfy the first-power null condition but not the higher
ones, so every family built from them is flagged ``unconfirmed`` and the
verifier reports what it measures.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .expr import Expr, Var
from .families import (FamilySpec, PhiSpec, T8Case1, T8Case2, T8Case4)
from .parser import parse_expr
from .poly import find_roots, real_roots

CUBIC = (-152, 80, -100, 91)  # ascending coefficients

SIGMA_EIKONAL = (2 / 7, 3 / 7, 6 / 7)
D_EIKONAL = (complex(12, -21) / 13, complex(18, 14) / 13, -1 + 0j)
SIGMA_CUBIC = (1 / 2, 2 / 3, 5 / 6)


def cubic_b() -> float:
    """The real root of the cubic, via :func:`find_roots`."""
    reals = real_roots(find_roots(CUBIC))
    if len(reals) != 1:
        raise ArithmeticError(f"expected one real root, found {reals}")
    return reals[0]


def cubic_direction(b: complex | None = None) -> tuple[complex, complex, complex]:
    b = cubic_b() if b is None else complex(b)
    return ((25 - 16 * b) / 9, b, -1 + 0j)


def _core(core: Expr | str | None) -> Expr:
    if core is None:
        return Var(0)
    if isinstance(core, str):
        return parse_expr(core, 1)
    return core


def example9(core: Expr | str | None = None) -> FamilySpec:
    """Nonlinear eikonal solution ``sigma . z + f(d . z)`` in three variables."""
    return T8Case1((2, 2, 2), SIGMA_EIKONAL,
                   PhiSpec.null_direction(D_EIKONAL, _core(core)), label="example9")


def example10(core: Expr | str | None = "sin(w)", b: complex | None = None) -> FamilySpec:
    """``u = sigma . z + f(a z1 + b z2 - z3)`` against ``sum u_j**3 = 1``."""
    return T8Case1((3, 3, 3), SIGMA_CUBIC,
                   PhiSpec.null_direction(cubic_direction(b), _core(core)),
                   label="example10", unconfirmed=True)


def example11(core: Expr | str | None = None) -> FamilySpec:
    """Square case: ``f(d . z) exp(sigma . z)`` against ``sum u_j**2 = u**2``."""
    return T8Case4(2, SIGMA_EIKONAL, PhiSpec.null_direction(D_EIKONAL, _core(core)),
                   label="example11")


def example11_cubic(core: Expr | str | None = None, b: complex | None = None) -> FamilySpec:
    """Cube case: ``f(a z1 + b z2 - z3) exp(sigma . z)`` against ``sum u_j**3 = u**3``."""
    return T8Case4(3, SIGMA_CUBIC, PhiSpec.null_direction(cubic_direction(b), _core(core)),
                   label="example11-cubic", unconfirmed=True)


SIGMA_MIXED = (1.5, -1.0, 1.5, -4 / 3, 1.5, -5 / 3, 1.5)
EXPONENTS_MIXED = (2, 3, 2, 3, 2, 3, 2)


def example12(core: Expr | str | None = None, b: complex | None = None) -> FamilySpec:
    """Seven variables, squares on odd and cubes on even coordinates.

    ``f`` is a core in two variables applied to
    ``z1 + i z3 - z5 - i z7`` and ``a z2 + b z4 - z6``.
    """
    a, bb, m = cubic_direction(b)
    d1 = (1, 0, 1j, 0, -1, 0, -1j)
    d2 = (0, a, 0, bb, 0, m, 0)
    if core is None:
        core = Var(0) + Var(1)
    elif isinstance(core, str):
        core = parse_expr(core, 2)
    return T8Case1(EXPONENTS_MIXED, SIGMA_MIXED,
                   PhiSpec("NullDirection", core=core, directions=(d1, d2)),
                   label="example12", unconfirmed=True)


def paraboloid(c=(0j, 0j)) -> FamilySpec:
    return T8Case2(tuple(complex(x) for x in c), label="paraboloid")


CATALOG: dict[str, Callable[..., FamilySpec]] = {
    "example9": example9,
    "example10": example10,
    "example11": example11,
    "example11-cubic": example11_cubic,
    "example12": example12,
    "paraboloid": paraboloid,
}


def parse_fraction(text: str) -> complex:
    """``"2/7"``, ``"-1"`` or ``"0.5"`` as a complex number."""
    return complex(float(Fraction(text.strip())))
