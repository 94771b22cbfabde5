"""Closed-form entire solution families and their machine-checkable constraints.

Each family spec is a small frozen dataclass; :func:`construct` turns it
into the candidate solution ``u``, the PDE instance ``H(grad u) = P(u)`` it
is meant to solve, and a list of :class:`Constraint` objects that
:mod:`waringpde.verify` evaluates.

Roots of constants (the ``l``-th root of ``c0``) are never computed here:
callers pass a witness ``root`` and the constructor checks
``root**l == c0``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from math import comb, factorial
from typing import Callable, NamedTuple, Sequence, Union

import numpy as np

from .expr import (ZERO, Const, Cosh, Exp, Expr, PowInt, Var, arity,
                   eval_jet, linear, lift, substitute, total)
from .poly import UniPoly, WaringForm, find_roots

PRECONDITION_TOL = 1e-12


class FamilyError(ValueError):
    """A scalar precondition of a family is violated."""


class NullDirectionError(ValueError):
    pass


# --- null functions ------------------------------------------------------

PHI_VARIANTS = ("CyclicDiff", "BaseDiff", "PairedDiff", "WeightedDiff",
                "NullDirection", "Zero")


@dataclass(frozen=True)
class PhiSpec:
    """Recipe for a function annihilated by a first-order operator.

    The difference variants (cyclic, base, paired, weighted) are killed by
    ``rho . grad``.  ``NullDirection`` composes ``core`` with the linear
    forms ``d . z`` for each direction in ``directions``.
    """

    variant: str
    core: Expr | None = None
    rho: tuple[complex, ...] | None = None
    directions: tuple[tuple[complex, ...], ...] = ()
    base: int = 0

    def __post_init__(self):
        if self.variant not in PHI_VARIANTS:
            raise ValueError(f"unknown Phi variant {self.variant!r}")
        if self.rho is not None:
            object.__setattr__(self, "rho", tuple(complex(r) for r in self.rho))
        object.__setattr__(self, "directions",
                           tuple(tuple(complex(x) for x in d) for d in self.directions))
        if self.variant != "Zero" and self.core is None:
            raise ValueError(f"{self.variant} needs a core expression")

    @classmethod
    def zero(cls) -> "PhiSpec":
        return cls("Zero")

    @classmethod
    def null_direction(cls, d: Sequence[complex], core: Expr) -> "PhiSpec":
        return cls("NullDirection", core=core, directions=(tuple(d),))


def _inverse_weights(rho: Sequence[complex], n: int) -> list[complex]:
    if rho is None or len(rho) != n:
        raise ValueError(f"need {n} weights rho, got {None if rho is None else len(rho)}")
    if any(r == 0 for r in rho):
        raise ValueError("difference variants need nonzero weights rho")
    return [1 / complex(r) for r in rho]


def _scaled(j: int, inv: Sequence[complex]) -> Expr:
    return Const(inv[j]) * Var(j)


def phi_coordinates(spec: PhiSpec, n: int) -> list[Expr]:
    """The derived coordinates the core is evaluated on."""
    v = spec.variant
    if v == "Zero":
        return []
    if v == "NullDirection":
        if not spec.directions:
            raise ValueError("NullDirection needs at least one direction")
        for d in spec.directions:
            if len(d) != n:
                raise ValueError(f"direction of length {len(d)} in dimension {n}")
        return [linear(d) for d in spec.directions]
    inv = _inverse_weights(spec.rho, n)
    if v == "CyclicDiff":
        return [_scaled((j + 1) % n, inv) - _scaled(j, inv) for j in range(n)]
    if v == "BaseDiff":
        b = spec.base
        if not 0 <= b < n:
            raise ValueError(f"base index {b} out of range")
        return [_scaled(j, inv) - _scaled(b, inv) for j in range(n) if j != b]
    if v == "PairedDiff":
        if n % 2:
            raise ValueError("PairedDiff needs an even dimension")
        return [_scaled(2 * k + 1, inv) - _scaled(2 * k, inv) for k in range(n // 2)]
    if v == "WeightedDiff":
        terms = [Const((n - 1) * inv[0]) * Var(0)]
        terms += [-_scaled(j, inv) for j in range(1, n)]
        return [total(terms)]
    raise ValueError(v)


def make_phi(spec: PhiSpec, n: int) -> Expr:
    """Expression of dimension ``n`` for the null function described by ``spec``."""
    if spec.variant == "Zero":
        return ZERO
    coords = phi_coordinates(spec, n)
    need = arity(spec.core)
    if need > len(coords):
        raise ValueError(
            f"{spec.variant} core uses {need} variables but only {len(coords)} "
            f"difference coordinates exist in dimension {n}")
    return substitute(spec.core, coords)


# --- family specs --------------------------------------------------------

def _cvec(xs) -> tuple[complex, ...]:
    return tuple(complex(x) for x in xs)


@dataclass(frozen=True)
class _Base:
    unconfirmed: bool = field(default=False, kw_only=True)
    label: str = field(default="", kw_only=True)


@dataclass(frozen=True)
class T3Case1(_Base):
    """``u = r (sigma . z) + Phi`` for ``(rho . grad u)**l = c0``."""

    rho: tuple[complex, ...]
    c0: complex
    ell: int
    sigma: tuple[complex, ...]
    root: complex
    phi: PhiSpec = PhiSpec("Zero")


@dataclass(frozen=True)
class T3Case2(_Base):
    """``u = ((l-h)/l r (sigma . z) + Phi)**(l/(l-h)) + a1``."""

    rho: tuple[complex, ...]
    c0: complex
    ell: int
    hbar: int
    sigma: tuple[complex, ...]
    root: complex
    a1: complex = 0j
    phi: PhiSpec = PhiSpec("Zero")


@dataclass(frozen=True)
class T3Case3(_Base):
    """``u = Phi exp(r (sigma . z)) + a1`` with ``h = l``."""

    rho: tuple[complex, ...]
    c0: complex
    ell: int
    sigma: tuple[complex, ...]
    root: complex
    a1: complex = 0j
    phi: PhiSpec = PhiSpec("Zero")


@dataclass(frozen=True)
class T3Case4(_Base):
    """``u = (a1-a2)/2 cosh(r (sigma . z) + Phi) + (a1+a2)/2``, ``l`` even."""

    rho: tuple[complex, ...]
    c0: complex
    ell: int
    sigma: tuple[complex, ...]
    root: complex
    a1: complex
    a2: complex
    phi: PhiSpec = PhiSpec("Zero")


@dataclass(frozen=True)
class T8Case1(_Base):
    """``u = sigma . z + Phi`` for ``sum u_j**l_j = 1`` (exponents may differ)."""

    exponents: tuple[int, ...]
    sigma: tuple[complex, ...]
    phi: PhiSpec = PhiSpec("Zero")


@dataclass(frozen=True)
class T8Case2(_Base):
    """Paraboloid ``u = sum (z_j/2 + c_j)**2`` for ``sum u_j**2 = u``."""

    c: tuple[complex, ...]


@dataclass(frozen=True)
class T8Case3(_Base):
    """``u = ((l-h)/l (sigma . z) + Phi)**(l/(l-h))`` for ``sum u_j**l = u**h``."""

    ell: int
    hbar: int
    sigma: tuple[complex, ...]
    phi: PhiSpec = PhiSpec("Zero")


@dataclass(frozen=True)
class T8Case4(_Base):
    """``u = Psi exp(sigma . z)`` for ``sum u_j**l = u**l``.

    ``psi`` is either an arbitrary expression or a :class:`PhiSpec`; with a
    spec the per-power null-direction conditions are reported as well.
    """

    ell: int
    sigma: tuple[complex, ...]
    psi: Union[Expr, PhiSpec]


@dataclass(frozen=True)
class ExampleDirect(_Base):
    """A verbatim solution candidate with its PDE instance."""

    u: Expr
    form: WaringForm
    rhs: UniPoly
    n: int


FamilySpec = Union[T3Case1, T3Case2, T3Case3, T3Case4,
                   T8Case1, T8Case2, T8Case3, T8Case4, ExampleDirect]

FAMILY_CASES = {cls.__name__: cls for cls in
                (T3Case1, T3Case2, T3Case3, T3Case4,
                 T8Case1, T8Case2, T8Case3, T8Case4, ExampleDirect)}


# --- constraints ---------------------------------------------------------

@dataclass(frozen=True)
class Constraint:
    """A residual that must vanish.

    ``kind == "scalar"``: ``evaluate()`` returns one number.
    ``kind == "sampled"``: ``evaluate(z)`` is sampled over points.
    Informational constraints are reported but never decide the verdict.
    """

    name: str
    kind: str
    evaluate: Callable
    informational: bool = False


class Construction(NamedTuple):
    u: Expr
    form: WaringForm
    rhs: UniPoly
    constraints: list[Constraint]
    unconfirmed: bool


def _close(a: complex, b: complex, tol: float = PRECONDITION_TOL) -> bool:
    return abs(a - b) <= tol * max(1.0, abs(a), abs(b))


def _require(ok: bool, message: str) -> None:
    if not ok:
        raise FamilyError(message)


def _dot(a: Sequence[complex], b: Sequence[complex]) -> complex:
    return sum((x * y for x, y in zip(a, b)), 0j)


def _power_ratio(ell: int, hbar: int) -> int:
    _require(0 <= hbar < ell, f"need 0 <= hbar < l, got hbar={hbar}, l={ell}")
    k, rem = divmod(ell, ell - hbar)
    _require(rem == 0, f"l/(l-hbar) = {ell}/{ell - hbar} is not an integer")
    return k


def _t3_checks(spec) -> tuple[int, list[Constraint]]:
    rho, sigma = _cvec(spec.rho), _cvec(spec.sigma)
    n = len(rho)
    _require(n >= 1 and len(sigma) == n, "rho and sigma must have equal nonzero length")
    _require(spec.ell >= 1, "l must be >= 1")
    c0, r = complex(spec.c0), complex(spec.root)
    _require(c0 != 0, "c0 must be nonzero")
    rs = _dot(rho, sigma)
    _require(_close(rs, 1), f"rho . sigma = {rs} != 1")
    _require(_close(r ** spec.ell, c0),
             f"root witness fails: root**{spec.ell} = {r ** spec.ell} != c0 = {c0}")
    phi = make_phi(spec.phi, n)
    cons = [
        Constraint("rho . sigma - 1", "scalar", lambda: rs - 1),
        Constraint(f"root^{spec.ell} - c0", "scalar", lambda: r ** spec.ell - c0),
        Constraint("rho . grad Phi", "sampled",
                   lambda z, phi=phi: _dot(rho, eval_jet(phi, z).gradient)),
    ]
    return n, cons


def _null_power_constraints(weights: Sequence[complex], exponents: Sequence[int],
                            directions: Sequence[Sequence[complex]]) -> list[Constraint]:
    """Per-monomial conditions that make ``core(d . z)`` invisible to the form."""
    out = []
    for alpha, value in null_power_residuals(weights, exponents, directions).items():
        name = _power_name(alpha, exponents)
        out.append(Constraint(name, "scalar", lambda v=value: v))
    return out


def _power_name(alpha: tuple[int, ...], exponents: Sequence[int]) -> str:
    uniform = len(set(exponents)) == 1
    if len(alpha) == 1 and uniform:
        ell, iota = exponents[0], alpha[0]
        s = {0: "", 1: "sigma "}.get(ell - iota, f"sigma^{ell - iota} ")
        d = "d" if iota == 1 else f"d^{iota}"
        return f"null[iota={iota}]: sum {s}{d}"
    tag = ",".join(map(str, alpha))
    suffix = "" if uniform else " (multinomial-weighted)"
    return f"null[alpha=({tag})]{suffix}"


def null_power_residuals(weights: Sequence[complex], exponents: Sequence[int],
                         directions: Sequence[Sequence[complex]]) -> dict[tuple[int, ...], complex]:
    """Coefficient of ``prod_m g_m**alpha_m`` in ``sum_j (w_j + sum_m d_mj g_m)**l_j``.

    For uniform exponents the common multinomial factor is divided out, so a
    single direction gives the plain sums ``sum_j w_j**(l-i) d_j**i``.
    """
    k = len(directions)
    lmax = max(exponents)
    uniform = len(set(exponents)) == 1
    out = {}
    for order in range(1, lmax + 1):
        for alpha in _compositions(order, k):
            acc = 0j
            for j, (w, ell) in enumerate(zip(weights, exponents)):
                if order > ell:
                    continue
                term = _multinom(ell, alpha) if not uniform else 1
                term = term * complex(w) ** (ell - order)
                for m, a in enumerate(alpha):
                    term *= complex(directions[m][j]) ** a
                acc += term
            out[alpha] = acc
    return out


def _compositions(order: int, k: int):
    """Multi-indices of length ``k`` with entries summing to ``order``."""
    for cut in itertools.combinations(range(order + k - 1), k - 1):
        parts, prev = [], -1
        for c in cut + (order + k - 1,):
            parts.append(c - prev - 1)
            prev = c
        yield tuple(parts)


def _multinom(ell: int, alpha: Sequence[int]) -> int:
    rest = ell - sum(alpha)
    out = factorial(ell) // factorial(rest)
    for a in alpha:
        out //= factorial(a)
    return out


def _sum_powers_check(sigma, exponents) -> Constraint:
    s = sum((complex(x) ** e for x, e in zip(sigma, exponents)), 0j)
    _require(_close(s, 1), f"sum sigma_j^l_j = {s} != 1")
    return Constraint("sum sigma_j^l_j - 1", "scalar", lambda: s - 1)


def _phi_conditions(sigma, exponents, phi_expr: Expr, scale: complex) -> list[Constraint]:
    """Expanded (ground truth) and literal forms of the condition on Phi."""
    def expanded(z):
        g = eval_jet(phi_expr, z).gradient
        return sum(((s + scale * gj) ** e - s ** e
                    for s, gj, e in zip(sigma, g, exponents)), 0j)

    def literal(z):
        g = eval_jet(phi_expr, z).gradient
        return sum((s ** (e - i) * gj ** i
                    for s, gj, e in zip(sigma, g, exponents)
                    for i in range(1, e + 1)), 0j)

    return [
        Constraint("Phi condition (binomial expansion)", "sampled", expanded),
        Constraint("Phi condition (literal, no binomial factors)", "sampled",
                   literal, informational=True),
    ]


def construct(spec: FamilySpec) -> Construction:
    """Candidate solution, PDE instance and constraint list for ``spec``."""
    flag = spec.unconfirmed
    if isinstance(spec, (T3Case1, T3Case2, T3Case3, T3Case4)):
        n, cons = _t3_checks(spec)
        rho, sigma = _cvec(spec.rho), _cvec(spec.sigma)
        r, c0, ell = complex(spec.root), complex(spec.c0), spec.ell
        form = WaringForm.linear_power(rho, ell)
        phi = make_phi(spec.phi, n)
        phase = Const(r) * linear(sigma)
        if isinstance(spec, T3Case1):
            return Construction(phase + phi, form, UniPoly.constant(c0), cons, flag)
        if isinstance(spec, T3Case2):
            k = _power_ratio(ell, spec.hbar)
            a1 = complex(spec.a1)
            inner = Const((ell - spec.hbar) / ell * r) * linear(sigma) + phi
            u = PowInt(inner, k) + Const(a1)
            rhs = UniPoly(c0, ((a1, spec.hbar),) if spec.hbar else ())
            return Construction(u, form, rhs, cons, flag)
        if isinstance(spec, T3Case3):
            a1 = complex(spec.a1)
            u = phi * Exp(phase) + Const(a1)
            return Construction(u, form, UniPoly(c0, ((a1, ell),)), cons, flag)
        _require(ell % 2 == 0, f"cosh family needs even l, got {ell}")
        a1, a2 = complex(spec.a1), complex(spec.a2)
        _require(a1 != a2, "cosh family needs a1 != a2")
        u = Const((a1 - a2) / 2) * Cosh(phase + phi) + Const((a1 + a2) / 2)
        rhs = UniPoly(c0, ((a1, ell // 2), (a2, ell // 2)))
        return Construction(u, form, rhs, cons, flag)

    if isinstance(spec, T8Case1):
        sigma = _cvec(spec.sigma)
        exps = tuple(spec.exponents)
        n = len(sigma)
        _require(n >= 1 and len(exps) == n, "exponents and sigma must have equal length")
        cons = [_sum_powers_check(sigma, exps)]
        phi = make_phi(spec.phi, n)
        cons += _phi_conditions(sigma, exps, phi, 1)
        if spec.phi.variant == "NullDirection":
            cons += _null_power_constraints(sigma, exps, spec.phi.directions)
        return Construction(linear(sigma) + phi, WaringForm.diagonal(exps),
                            UniPoly.constant(1), cons, flag)

    if isinstance(spec, T8Case2):
        c = _cvec(spec.c)
        _require(len(c) >= 1, "paraboloid needs at least one coordinate")
        u = total([PowInt(Const(0.5) * Var(j) + Const(cj), 2) for j, cj in enumerate(c)])
        return Construction(u, WaringForm.uniform(2, len(c)), UniPoly.monomial(1), [], flag)

    if isinstance(spec, T8Case3):
        sigma = _cvec(spec.sigma)
        n, ell = len(sigma), spec.ell
        k = _power_ratio(ell, spec.hbar)
        exps = (ell,) * n
        cons = [_sum_powers_check(sigma, exps)]
        phi = make_phi(spec.phi, n)
        # u_j = B**(k-1) (sigma_j + k Phi_j), so Phi enters scaled by k
        cons += _phi_conditions(sigma, exps, phi, k)
        if spec.phi.variant == "NullDirection":
            cons += _null_power_constraints(sigma, exps, spec.phi.directions)
        u = PowInt(Const((ell - spec.hbar) / ell) * linear(sigma) + phi, k)
        return Construction(u, WaringForm.uniform(ell, n),
                            UniPoly.monomial(spec.hbar), cons, flag)

    if isinstance(spec, T8Case4):
        sigma = _cvec(spec.sigma)
        n, ell = len(sigma), spec.ell
        exps = (ell,) * n
        cons = [_sum_powers_check(sigma, exps)]
        psi_spec = spec.psi if isinstance(spec.psi, PhiSpec) else None
        psi = make_phi(psi_spec, n) if psi_spec else lift(spec.psi)

        def expanded(z):
            j = eval_jet(psi, z)
            return sum(((s * j.value + g) ** ell for s, g in zip(sigma, j.gradient)), 0j) \
                - j.value ** ell

        def literal(z):
            j = eval_jet(psi, z)
            return sum(((s * j.value) ** (ell - i) * g ** i
                        for s, g in zip(sigma, j.gradient)
                        for i in range(1, ell + 1)), 0j)

        cons += [
            Constraint("Psi condition (binomial expansion)", "sampled", expanded),
            Constraint("Psi condition (literal, no binomial factors)", "sampled",
                       literal, informational=True),
        ]
        if psi_spec is not None and psi_spec.variant == "NullDirection":
            cons += _null_power_constraints(sigma, exps, psi_spec.directions)
        u = psi * Exp(linear(sigma))
        return Construction(u, WaringForm.uniform(ell, n), UniPoly.monomial(ell), cons, flag)

    if isinstance(spec, ExampleDirect):
        _require(spec.form.n == spec.n, "form dimension differs from n")
        _require(arity(spec.u) <= spec.n, "u uses more variables than n")
        return Construction(spec.u, spec.form, spec.rhs, [], flag)

    raise TypeError(f"not a family spec: {spec!r}")


def dimension(spec: FamilySpec) -> int:
    if isinstance(spec, ExampleDirect):
        return spec.n
    if isinstance(spec, T8Case2):
        return len(spec.c)
    return len(spec.sigma)


# --- null-direction solver ----------------------------------------------

@dataclass(frozen=True)
class NullDirectionCandidate:
    d: tuple[complex, ...]
    residuals: dict[int, complex]
    source: str

    @property
    def max_residual(self) -> float:
        return max(abs(v) for v in self.residuals.values())


def power_weights(c: Sequence[complex], exponents: Sequence[int]) -> dict[int, list[complex]]:
    """``iota -> [C(l_j, iota) c_j**(l_j - iota)]``; binomials dropped for uniform exponents."""
    uniform = len(set(exponents)) == 1
    out = {}
    for iota in range(1, max(exponents) + 1):
        row = []
        for cj, ell in zip(c, exponents):
            if iota > ell:
                row.append(0j)
            else:
                b = 1 if uniform else comb(ell, iota)
                row.append(b * complex(cj) ** (ell - iota))
        out[iota] = row
    return out


def power_residuals(c: Sequence[complex], exponents: Sequence[int],
                    d: Sequence[complex]) -> dict[int, complex]:
    w = power_weights(c, exponents)
    return {iota: sum((wj * complex(dj) ** iota for wj, dj in zip(row, d)), 0j)
            for iota, row in w.items()}


def eliminate_linear(c: Sequence[complex], exponents: Sequence[int],
                     fixed: dict[int, complex]) -> tuple[int, int, complex, complex]:
    """Use the first-power condition to write one free component through another.

    Returns ``(p, q, offset, slope)`` with ``d_p = offset + slope * d_q``.
    """
    n = len(c)
    free = [j for j in range(n) if j not in fixed]
    if len(free) != 2:
        raise NullDirectionError("linear elimination needs exactly two free components")
    w = power_weights(c, exponents)[1]
    known = sum((w[j] * complex(v) for j, v in fixed.items()), 0j)
    p, q = free
    if w[p] == 0:
        p, q = q, p
    if w[p] == 0:
        raise NullDirectionError("first-power condition does not involve the free components")
    return p, q, -known / w[p], -w[q] / w[p]


def _poly_mul(a: list[complex], b: list[complex]) -> list[complex]:
    out = [0j] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_pow(a: list[complex], k: int) -> list[complex]:
    out = [1 + 0j]
    for _ in range(k):
        out = _poly_mul(out, a)
    return out


def _trim(coeffs: list[complex], rel: float = 1e-13) -> list[complex]:
    scale = max((abs(x) for x in coeffs), default=0.0)
    cs = list(coeffs)
    while len(cs) > 1 and abs(cs[-1]) <= rel * scale:
        cs.pop()
    return cs


def solve_null_direction(c: Sequence[complex], exponents: Union[int, Sequence[int]],
                         fixed: dict[int, complex], seed: int = 0xC0FFEE,
                         ) -> list[NullDirectionCandidate]:
    """Candidate null directions ``d`` for weights ``c``.

    The conditions are ``sum_j C(l_j, i) c_j**(l_j-i) d_j**i = 0`` for every
    power ``i``.  With one or two free components the system is reduced to
    univariate polynomials (the first-power condition eliminates one
    unknown) and every root of every remaining condition becomes a
    candidate.  More free components go through damped Gauss-Newton on the
    stacked system.  Each candidate carries the residual of *every* power
    condition; nothing is filtered, since over-determined systems (three
    conditions, two unknowns) generally have no exact solution.
    """
    c = [complex(x) for x in c]
    n = len(c)
    exps = [exponents] * n if isinstance(exponents, int) else list(exponents)
    if len(exps) != n:
        raise NullDirectionError("exponents and c differ in length")
    fixed = {int(j): complex(v) for j, v in fixed.items()}
    if any(not 0 <= j < n for j in fixed):
        raise NullDirectionError("fixed index out of range")
    if not any(v != 0 for v in fixed.values()):
        raise NullDirectionError(
            "fixed assignment must pin at least one nonzero component (d = 0 is trivial)")
    free = [j for j in range(n) if j not in fixed]
    if not free:
        return [NullDirectionCandidate(
            tuple(fixed[j] for j in range(n)),
            power_residuals(c, exps, [fixed[j] for j in range(n)]), "fixed")]
    cands = _closed_form(c, exps, fixed, free) if len(free) <= 2 else []
    if not cands:
        cands = _newton(c, exps, fixed, free, seed)
    if not cands:
        raise NullDirectionError("no finite solution")
    uniq: list[NullDirectionCandidate] = []
    for cand in sorted(cands, key=lambda k: [(x.real, x.imag) for x in k.d]):
        if not any(max(abs(a - b) for a, b in zip(cand.d, u.d)) < 1e-9 for u in uniq):
            uniq.append(cand)
    return uniq


def _closed_form(c, exps, fixed, free) -> list[NullDirectionCandidate]:
    n = len(c)
    weights = power_weights(c, exps)
    # each component as a polynomial in the single unknown t
    comp: dict[int, list[complex]] = {j: [v] for j, v in fixed.items()}
    if len(free) == 1:
        comp[free[0]] = [0j, 1 + 0j]
        start = 1
    else:
        try:
            p, q, off, slope = eliminate_linear(c, exps, fixed)
        except NullDirectionError:
            return []
        comp[q] = [0j, 1 + 0j]
        comp[p] = [off, slope]
        start = 2
    cands = []
    for iota in range(start, max(exps) + 1):
        poly = [0j]
        for j in range(n):
            term = [weights[iota][j] * x for x in _poly_pow(comp[j], iota)]
            poly = [a + b for a, b in itertools.zip_longest(poly, term, fillvalue=0j)]
        poly = _trim(poly)
        if len(poly) < 2:
            continue
        for t in find_roots(poly):
            d = tuple(sum((a * t ** k for k, a in enumerate(comp[j])), 0j) for j in range(n))
            cands.append(NullDirectionCandidate(d, power_residuals(c, exps, d),
                                                f"root of power-{iota} condition"))
    return cands


def _newton(c, exps, fixed, free, seed, restarts: int = 16,
            iters: int = 100) -> list[NullDirectionCandidate]:
    rng = np.random.default_rng(seed)
    weights = power_weights(c, exps)
    iotas = sorted(weights)
    n = len(c)
    scale = max(abs(v) for v in fixed.values())

    def full(x):
        d = [0j] * n
        for j, v in fixed.items():
            d[j] = v
        for k, j in enumerate(free):
            d[j] = x[k]
        return d

    def system(x):
        d = full(x)
        F = np.array([sum(weights[i][j] * d[j] ** i for j in range(n)) for i in iotas])
        J = np.array([[i * weights[i][j] * d[j] ** (i - 1) for j in free] for i in iotas])
        return F, J

    out = []
    for _ in range(restarts):
        x = scale * (rng.standard_normal(len(free)) + 1j * rng.standard_normal(len(free)))
        F, J = system(x)
        for _ in range(iters):
            step = np.linalg.lstsq(J, -F, rcond=None)[0]
            lam = 1.0
            norm = np.linalg.norm(F)
            while lam > 1e-6:
                F2, J2 = system(x + lam * step)
                if np.linalg.norm(F2) < norm:
                    break
                lam /= 2
            x = x + lam * step
            F, J = F2, J2
            if np.linalg.norm(step) * lam < 1e-14 * max(1.0, np.linalg.norm(x)):
                break
        d = tuple(complex(v) for v in full(x))
        if all(math.isfinite(abs(v)) for v in d):
            out.append(NullDirectionCandidate(d, power_residuals(c, exps, d), "gauss-newton"))
    return out


def sample_annihilation(phi: Expr, rho: Sequence[complex], points) -> float:
    """``max |rho . grad Phi| / (1 + |grad Phi|)`` over ``points``."""
    worst = 0.0
    for z in points:
        g = eval_jet(phi, z).gradient
        worst = max(worst, abs(_dot(rho, g)) / (1 + math.sqrt(sum(abs(x) ** 2 for x in g))))
    return worst

