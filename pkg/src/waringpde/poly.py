"""Left-side forms H, right-side polynomials P, and an Aberth-Ehrlich root finder."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import factorial
from typing import Sequence

from .cxjet import (DimensionError, Jet, jet_add, jet_const, jet_mul,
                    jet_pow_int, jet_vars)


class RootFindingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Monomial:
    coeff: complex
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)


@dataclass(frozen=True)
class WaringForm:
    """Either a diagonal form ``sum_j x_j**l_j`` or a sparse homogeneous polynomial.

    Exactly one of ``exponents`` / ``monomials`` is used; diagonal forms may
    mix exponents, sparse ones must be homogeneous.
    """

    exponents: tuple[int, ...] | None = None
    monomials: tuple[Monomial, ...] | None = None

    def __post_init__(self):
        if (self.exponents is None) == (self.monomials is None):
            raise ValueError("give either diagonal exponents or monomials")
        if self.exponents is not None:
            exps = tuple(int(e) for e in self.exponents)
            if not exps or any(e < 1 for e in exps):
                raise ValueError(f"diagonal exponents must be >= 1, got {exps}")
            object.__setattr__(self, "exponents", exps)
        else:
            monos = tuple(self.monomials)
            if not monos:
                raise ValueError("empty monomial list")
            n = len(monos[0].exponents)
            degs = {m.degree for m in monos}
            if any(len(m.exponents) != n for m in monos):
                raise DimensionError("monomials have different numbers of variables")
            if len(degs) != 1 or degs.pop() < 1:
                raise ValueError("monomials must share one total degree >= 1")
            object.__setattr__(self, "monomials", monos)

    @classmethod
    def diagonal(cls, exponents: Sequence[int]) -> "WaringForm":
        return cls(exponents=tuple(exponents))

    @classmethod
    def uniform(cls, ell: int, n: int) -> "WaringForm":
        return cls(exponents=(ell,) * n)

    @classmethod
    def linear_power(cls, rho: Sequence[complex], ell: int) -> "WaringForm":
        """``(rho . x)**ell`` expanded into monomials (multinomial theorem)."""
        n = len(rho)
        monos = []
        for combo in combinations_with_replacement(range(n), ell):
            exps = [0] * n
            for j in combo:
                exps[j] += 1
            coeff = complex(factorial(ell))
            for j, e in enumerate(exps):
                coeff *= complex(rho[j]) ** e / factorial(e)
            monos.append(Monomial(coeff, tuple(exps)))
        return cls(monomials=tuple(monos))

    @property
    def n(self) -> int:
        if self.exponents is not None:
            return len(self.exponents)
        return len(self.monomials[0].exponents)

    @property
    def is_diagonal(self) -> bool:
        return self.exponents is not None

    @property
    def degree(self) -> int | None:
        """Common degree, or ``None`` for a mixed-exponent diagonal form."""
        if self.exponents is not None:
            return self.exponents[0] if len(set(self.exponents)) == 1 else None
        return self.monomials[0].degree

    def to_monomials(self) -> tuple[Monomial, ...]:
        if self.monomials is not None:
            return self.monomials
        n = self.n
        out = []
        for j, e in enumerate(self.exponents):
            exps = [0] * n
            exps[j] = e
            out.append(Monomial(1 + 0j, tuple(exps)))
        return tuple(out)


def eval_form(H: WaringForm, x: Sequence[Jet]) -> Jet:
    """``H(x)`` in jet arithmetic."""
    if len(x) != H.n:
        raise DimensionError(f"form in {H.n} variables evaluated on {len(x)} jets")
    dim = x[0].dim
    total = jet_const(0, dim)
    if H.exponents is not None:
        for xj, e in zip(x, H.exponents):
            total = jet_add(total, jet_pow_int(xj, e))
        return total
    for m in H.monomials:
        term = jet_const(m.coeff, dim)
        for xj, e in zip(x, m.exponents):
            if e:
                term = jet_mul(term, jet_pow_int(xj, e))
        total = jet_add(total, term)
    return total


def eval_form_value(H: WaringForm, x: Sequence[complex]) -> complex:
    return eval_form(H, [Jet(complex(v), ()) for v in x]).value


def form_gradient(H: WaringForm, x: Sequence[complex]) -> tuple[complex, ...]:
    """``grad H`` at ``x`` via coordinate jets."""
    return eval_form(H, jet_vars(x)).gradient


@dataclass(frozen=True)
class UniPoly:
    """``leading * prod (w - root)**mult``."""

    leading: complex
    roots: tuple[tuple[complex, int], ...] = ()
    distinct: bool = False

    def __post_init__(self):
        lead = complex(self.leading)
        if lead == 0:
            raise ValueError("leading coefficient must be nonzero")
        roots = tuple((complex(r), int(m)) for r, m in self.roots)
        if any(m < 1 for _, m in roots):
            raise ValueError("root multiplicities must be >= 1")
        if self.distinct:
            if any(m != 1 for _, m in roots):
                raise ValueError("distinct-zeros mode requires simple roots")
            values = [r for r, _ in roots]
            if len(set(values)) != len(values):
                raise ValueError("distinct-zeros mode requires pairwise distinct roots")
        object.__setattr__(self, "leading", lead)
        object.__setattr__(self, "roots", roots)

    @classmethod
    def monomial(cls, power: int, leading: complex = 1) -> "UniPoly":
        """``leading * w**power``; power 0 is the constant polynomial."""
        return cls(leading, ((0j, power),) if power else ())

    @classmethod
    def constant(cls, c0: complex) -> "UniPoly":
        return cls(c0, ())

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots)

    def coefficients(self) -> list[complex]:
        """Ascending coefficients of the expanded polynomial."""
        coeffs = [self.leading]
        for r, m in self.roots:
            for _ in range(m):
                nxt = [0j] * (len(coeffs) + 1)
                for k, c in enumerate(coeffs):
                    nxt[k + 1] += c
                    nxt[k] -= r * c
                coeffs = nxt
        return coeffs


def eval_upoly(P: UniPoly, w: Jet) -> Jet:
    out = jet_const(P.leading, w.dim)
    for r, m in P.roots:
        shifted = jet_add(w, jet_const(-r, w.dim))
        out = jet_mul(out, jet_pow_int(shifted, m))
    return out


def eval_upoly_value(P: UniPoly, w: complex) -> complex:
    return eval_upoly(P, Jet(complex(w), ())).value


def upoly_derivative(P: UniPoly, w: complex) -> complex:
    return eval_upoly(P, Jet(complex(w), (1 + 0j,))).gradient[0]


# --- root finding ---------------------------------------------------------

def horner(coeffs: Sequence[complex], x: complex) -> tuple[complex, complex]:
    """Value and derivative of the ascending-coefficient polynomial at ``x``."""
    p = 0j
    dp = 0j
    for c in reversed(coeffs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def find_roots(coeffs: Sequence[complex], tol: float = 1e-13,
               max_sweeps: int = 200) -> list[complex]:
    """All complex roots by Aberth-Ehrlich simultaneous iteration.

    Coefficients are in ascending degree.  Starting points sit on a circle of
    radius ``1 + max |c_k / c_deg|``; iteration stops when the largest update
    falls below ``tol`` (relative to the root magnitude once it exceeds 1).
    Each root then gets one Newton polishing step.  Roots are returned
    sorted by ``(re, im)``.
    """
    cs = [complex(c) for c in coeffs]
    deg = len(cs) - 1
    if deg < 1:
        raise ValueError("polynomial degree must be at least 1")
    if cs[-1] == 0:
        raise ValueError("leading coefficient is zero")
    lead = cs[-1]
    radius = 1 + max(abs(c / lead) for c in cs[:-1])
    # offset angle avoids symmetric starts that stall on real polynomials
    z = [radius * cmath.exp(1j * (2 * math.pi * k / deg + 0.4)) for k in range(deg)]
    for sweep in range(max_sweeps):
        biggest = 0.0
        for k in range(deg):
            p, dp = horner(cs, z[k])
            if p == 0:
                continue
            ratio = p / dp if dp != 0 else complex(radius)
            repulsion = sum(1 / (z[k] - z[j]) for j in range(deg)
                            if j != k and z[k] != z[j])
            denom = 1 - ratio * repulsion
            step = ratio / denom if denom != 0 else ratio
            z[k] -= step
            biggest = max(biggest, abs(step) / max(1.0, abs(z[k])))
        if biggest < tol:
            break
    else:
        raise RootFindingError(
            f"Aberth iteration did not converge in {max_sweeps} sweeps "
            f"(last update {biggest:.3e})")
    polished = []
    for r in z:
        p, dp = horner(cs, r)
        polished.append(r - p / dp if dp != 0 else r)
    return sorted(polished, key=lambda r: (r.real, r.imag))


def expand_roots(roots: Sequence[complex], leading: complex) -> list[complex]:
    """Ascending coefficients of ``leading * prod (x - r)``."""
    return UniPoly(leading, tuple((r, 1) for r in roots)).coefficients()


def real_roots(roots: Sequence[complex], tol: float = 1e-10) -> list[float]:
    return [r.real for r in roots if abs(r.imag) <= tol * max(1.0, abs(r))]

