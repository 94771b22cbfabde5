"""Weierstrass ``wp`` by Laurent series and residual checks for the left-factor ODEs.

When ``u = f(g(z))`` solves ``H(grad u) = P(u)`` without being pseudoprime,
the left factor ``f`` satisfies one of

    C1  f' = A0 (f - a1)                        f = A1 exp(A0 w) + a1
    C2  f' = A0 (f - a1)(f - a2)                Moebius in exp(A0 (a1 - a2) w)
    C3  (f')**2 = A0 (f - a1)(f - a2)           f = (a1-a2)/2 sin(sqrt(-A0) w + A1) + (a1+a2)/2
    C4  q(w) (f')**2 = A0 prod_{k<=3} (f - a_k)
    C5  q(w) (f')**2 = A0 prod_{k<=4} (f - a_k)

with ``q(w) = (w - b1)**m1 (w - b2)**m2``.  For C4/C5 the caller supplies
``f`` built from ``wp`` (affine image for C4, ``1/(wp - c)`` for C5); only
``m1 = m2 = 0`` has a constructive solution here, other exponents are
measured as given.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from .cxjet import DomainError, Jet, jet_analytic, jet_var
from .poly import find_roots

LAURENT_TERMS = 30
VALIDITY_RADIUS = 1.0
POLE_CLEARANCE = 1e-3


@dataclass(frozen=True)
class WeierstrassParams:
    g2: complex
    g3: complex
    roots: tuple[complex, complex, complex] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "g2", complex(self.g2))
        object.__setattr__(self, "g3", complex(self.g3))
        if self.roots is None and self.discriminant != 0:
            object.__setattr__(self, "roots",
                               tuple(find_roots([-self.g3, -self.g2, 0, 4])))

    @property
    def discriminant(self) -> complex:
        return self.g2 ** 3 - 27 * self.g3 ** 2

    def require_nondegenerate(self) -> None:
        if self.discriminant == 0:
            raise DomainError("g2**3 - 27 g3**2 = 0: degenerate lattice")


def laurent_coefficients(g2: complex, g3: complex, terms: int = LAURENT_TERMS) -> list[complex]:
    """``[c_2, ..., c_{terms+1}]`` with ``wp(z) = z**-2 + sum c_k z**(2k-2)``."""
    if terms < 1:
        raise ValueError("need at least one Laurent coefficient")
    c = {2: complex(g2) / 20, 3: complex(g3) / 28}
    for k in range(4, terms + 2):
        s = sum((c[m] * c[k - m] for m in range(2, k - 1)), 0j)
        c[k] = 3 * s / ((2 * k + 1) * (k - 3))
    return [c[k] for k in range(2, terms + 2)]


def wp(z: complex, p: WeierstrassParams, terms: int = LAURENT_TERMS,
       radius: float = VALIDITY_RADIUS) -> tuple[complex, complex]:
    """``(wp(z), wp'(z))`` from the truncated Laurent series.

    The series is only trusted for ``0 < |z| < radius``; the default radius
    is conservative for ``|g2|, |g3| <= 4``.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("wp has a double pole at z = 0")
    if abs(z) >= radius:
        raise DomainError(f"|z| = {abs(z):.3g} outside the series validity radius {radius}")
    coeffs = laurent_coefficients(p.g2, p.g3, terms)
    z2 = z * z
    val = 1 / z2
    der = -2 / (z2 * z)
    zp = z2  # z**(2k-2) for k = 2
    for k, ck in enumerate(coeffs, start=2):
        val += ck * zp
        der += ck * (2 * k - 2) * zp / z
        zp *= z2
    return val, der


def wp_jet(w: Jet, p: WeierstrassParams, terms: int = LAURENT_TERMS) -> Jet:
    v, d = wp(w.value, p, terms)
    return Jet(v, tuple(d * g for g in w.gradient))


def wp_ode_residual(z: complex, p: WeierstrassParams, terms: int = LAURENT_TERMS) -> complex:
    v, d = wp(z, p, terms)
    return d * d - (4 * v ** 3 - p.g2 * v - p.g3)


def factored_gap(z: complex, p: WeierstrassParams, terms: int = LAURENT_TERMS) -> complex:
    """``(4wp**3 - g2 wp - g3) - 4 prod (wp - e_k)`` at ``wp(z)``.

    Evaluated as the difference polynomial with the ``4 wp**3`` terms
    cancelled exactly; near the pole ``4 wp**3`` alone is ~1e6 and naive
    subtraction would leave an ulp of that behind.
    """
    p.require_nondegenerate()
    v, _ = wp(z, p, terms)
    e1, e2, e3 = p.roots
    s1 = e1 + e2 + e3
    s2 = e1 * e2 + e1 * e3 + e2 * e3
    s3 = e1 * e2 * e3
    return (4 * s1 * v - (p.g2 + 4 * s2)) * v - (p.g3 - 4 * s3)


# --- left factors --------------------------------------------------------

def _distinct(alphas) -> None:
    for i in range(len(alphas)):
        for j in range(i):
            if alphas[i] == alphas[j]:
                raise ValueError("alpha values must be pairwise distinct")


@dataclass(frozen=True)
class C1Exp:
    A0: complex
    A1: complex
    alpha1: complex

    def __post_init__(self):
        if complex(self.A0) * complex(self.A1) == 0:
            raise ValueError("need A0 * A1 != 0")

    def f(self, w: Jet) -> Jet:
        return jet_analytic("exp", w * complex(self.A0)) * complex(self.A1) + complex(self.alpha1)

    def residual(self, f: Jet) -> complex:
        return f.gradient[0] - self.A0 * (f.value - self.alpha1)

    def poles(self, w: complex) -> float:
        return math.inf


@dataclass(frozen=True)
class C2Moebius:
    A0: complex
    A1: complex
    alpha1: complex
    alpha2: complex

    def __post_init__(self):
        if complex(self.A0) * complex(self.A1) == 0:
            raise ValueError("need A0 * A1 != 0")
        _distinct([complex(self.alpha1), complex(self.alpha2)])

    @property
    def _kappa(self) -> complex:
        return complex(self.A0) * (complex(self.alpha1) - complex(self.alpha2))

    def f(self, w: Jet) -> Jet:
        E = jet_analytic("exp", w * self._kappa) * complex(self.A1)
        return (E * complex(self.alpha2) - complex(self.alpha1)) / (E - 1)

    def residual(self, f: Jet) -> complex:
        return f.gradient[0] - self.A0 * (f.value - self.alpha1) * (f.value - self.alpha2)

    def poles(self, w: complex) -> float:
        """Distance from ``w`` to the nearest zero of ``A1 exp(kappa w) - 1``."""
        k = self._kappa
        t = k * w + cmath.log(complex(self.A1))
        m = round((t / (2j * math.pi)).real)
        return abs(t - 2j * math.pi * m) / abs(k)


@dataclass(frozen=True)
class C3Sin:
    A0: complex
    A1: complex
    alpha1: complex
    alpha2: complex

    def __post_init__(self):
        if complex(self.A0) == 0:
            raise ValueError("need A0 != 0")
        _distinct([complex(self.alpha1), complex(self.alpha2)])

    def f(self, w: Jet) -> Jet:
        a1, a2 = complex(self.alpha1), complex(self.alpha2)
        theta = w * cmath.sqrt(-complex(self.A0)) + complex(self.A1)
        return jet_analytic("sin", theta) * ((a1 - a2) / 2) + (a1 + a2) / 2

    def residual(self, f: Jet) -> complex:
        return f.gradient[0] ** 2 - self.A0 * (f.value - self.alpha1) * (f.value - self.alpha2)

    def poles(self, w: complex) -> float:
        return math.inf


@dataclass(frozen=True)
class WpAffine:
    """``f = scale * wp + shift``."""

    g2: complex
    g3: complex
    scale: complex
    shift: complex

    def __call__(self, w: Jet) -> Jet:
        return wp_jet(w, WeierstrassParams(self.g2, self.g3)) * complex(self.scale) + complex(self.shift)


@dataclass(frozen=True)
class WpInverse:
    """``f = 1 / (wp - c)``."""

    g2: complex
    g3: complex
    c: complex

    def __call__(self, w: Jet) -> Jet:
        return 1 / (wp_jet(w, WeierstrassParams(self.g2, self.g3)) - complex(self.c))


@dataclass(frozen=True)
class _Elliptic:
    A0: complex
    alphas: tuple[complex, ...]
    source: Union[WpAffine, WpInverse]
    m1: int = 0
    m2: int = 0
    a1: complex = 0j
    a2: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(complex(a) for a in self.alphas))
        if len(self.alphas) != self.order:
            raise ValueError(f"need {self.order} alpha values, got {len(self.alphas)}")
        _distinct(self.alphas)
        if complex(self.A0) == 0:
            raise ValueError("need A0 != 0")
        if self.m1 < 0 or self.m2 < 0 or self.m1 + self.m2 > 2:
            raise ValueError("need m1, m2 >= 0 with m1 + m2 <= 2")
        if (self.m1 or self.m2) and complex(self.a1) == complex(self.a2):
            raise ValueError("need a1 != a2")

    order = 0

    def f(self, w: Jet) -> Jet:
        return self.source(w)

    def residual(self, f: Jet, w: complex = 0j) -> complex:
        q = (w - self.a1) ** self.m1 * (w - self.a2) ** self.m2
        rhs = complex(self.A0)
        for a in self.alphas:
            rhs *= f.value - a
        return q * f.gradient[0] ** 2 - rhs

    def poles(self, w: complex) -> float:
        return abs(w)


@dataclass(frozen=True)
class C4Elliptic(_Elliptic):
    order = 3

    @classmethod
    def from_wp(cls, g2: complex, g3: complex, scale: complex = 1, shift: complex = 0) -> "C4Elliptic":
        """``f = scale wp + shift`` solves the cubic ODE with ``A0 = 4/scale``, ``a_k = shift + scale e_k``."""
        p = WeierstrassParams(g2, g3)
        p.require_nondegenerate()
        scale, shift = complex(scale), complex(shift)
        return cls(4 / scale, tuple(shift + scale * e for e in p.roots),
                   WpAffine(p.g2, p.g3, scale, shift))


@dataclass(frozen=True)
class C5Elliptic4(_Elliptic):
    order = 4

    @classmethod
    def from_wp(cls, g2: complex, g3: complex, c: complex) -> "C5Elliptic4":
        """``f = 1/(wp - c)`` solves the quartic ODE.

        ``(f')**2 = 4 prod (c - e_k) f prod (f + 1/(c - e_k))``, so the zeros
        are ``0`` and ``-1/(c - e_k)``.
        """
        p = WeierstrassParams(g2, g3)
        p.require_nondegenerate()
        c = complex(c)
        gaps = [c - e for e in p.roots]
        if any(abs(g) < 1e-12 for g in gaps):
            raise ValueError("c must differ from the roots e_k")
        A0 = 4 * gaps[0] * gaps[1] * gaps[2]
        return cls(A0, (0j,) + tuple(-1 / g for g in gaps), WpInverse(p.g2, p.g3, c))


LeftFactorCase = Union[C1Exp, C2Moebius, C3Sin, C4Elliptic, C5Elliptic4]
LEFT_FACTOR_CASES = {cls.__name__: cls for cls in (C1Exp, C2Moebius, C3Sin, C4Elliptic, C5Elliptic4)}


@dataclass
class OdeReport:
    case: str
    max_abs_residual: float
    worst_point: complex | None
    samples: int
    seed: int
    domain: str

    def to_json(self) -> dict:
        w = self.worst_point
        return {
            "case": self.case,
            "max_abs_residual": self.max_abs_residual if math.isfinite(self.max_abs_residual) else "inf",
            "worst_point": None if w is None else [w.real, w.imag],
            "samples": self.samples,
            "seed": self.seed,
            "domain": self.domain,
        }


def sample_domain(case: LeftFactorCase) -> tuple[float, float]:
    """Annulus ``(r_min, r_max)`` in the ``w``-plane used for sampling."""
    if isinstance(case, _Elliptic):
        return 0.2, 0.5
    return 0.0, 1.0


def ode_residual(case: LeftFactorCase, w: complex) -> complex:
    f = case.f(jet_var(0, w, 1))
    if isinstance(case, _Elliptic):
        return case.residual(f, w)
    return case.residual(f)


def verify_left_factor(case: LeftFactorCase, samples: int = 50, seed: int = 0xC0FFEE,
                       clearance: float = POLE_CLEARANCE) -> OdeReport:
    """Largest ODE residual of ``case`` over pole-avoiding points.

    Points are uniform in an annulus of the ``w``-plane; candidates closer
    than ``clearance`` to a pole of ``f`` are redrawn.
    """
    rng = np.random.default_rng(seed)
    lo, hi = sample_domain(case)
    worst, where, taken = 0.0, None, 0
    while taken < samples:
        r = math.sqrt(rng.uniform(lo * lo, hi * hi))
        w = complex(r * math.cos(t := rng.uniform(0, 2 * math.pi)), r * math.sin(t))
        if case.poles(w) < clearance:
            continue
        taken += 1
        try:
            a = abs(ode_residual(case, w))
        except (OverflowError, ZeroDivisionError):
            a = math.inf
        if math.isnan(a):
            a = math.inf
        if a > worst or where is None:
            worst, where = max(a, worst), w
    return OdeReport(type(case).__name__, worst, where, samples, seed,
                     f"annulus {lo} <= |w| <= {hi}, clearance {clearance} from poles")


__all__ = [
    "C1Exp", "C2Moebius", "C3Sin", "C4Elliptic", "C5Elliptic4", "LEFT_FACTOR_CASES",
    "LeftFactorCase", "OdeReport", "WeierstrassParams", "WpAffine", "WpInverse",
    "factored_gap", "laurent_coefficients", "ode_residual", "verify_left_factor",
    "wp", "wp_jet", "wp_ode_residual",
]
