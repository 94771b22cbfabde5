"""Characteristic ODE system of ``H(Du) = P(u)`` and a fixed-step RK4 integrator.

For ``F(x, u, y) = H(x) - P(u)`` (``x`` the gradient slot, ``y`` the point)
the characteristics are

    dz/dtau  = grad H(Du)
    dDu/dtau = P'(u) Du
    du/dtau  = l P(u)          (H homogeneous of degree l)
             = Du . grad H(Du) (mixed exponents)

The two forms of ``du/dtau`` agree on solutions by Euler's identity.  The
parameter runs along the straight segment ``0 -> tau_end`` in the complex
plane; that path is a convention of this module and is recorded in traces.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cxjet import Jet
from .expr import Expr, eval_jet, eval_value
from .poly import (UniPoly, WaringForm, eval_form, eval_upoly_value,
                   form_gradient, upoly_derivative)

BLOWUP_GUARD = 1e12
PATH_CONVENTION = "straight segment 0 -> tau_end"


class BlowUpError(ArithmeticError):
    """The trajectory ran into (or was launched toward) a movable singularity."""

    def __init__(self, message: str, tau_reached: complex | None,
                 tau_estimate: complex | None):
        super().__init__(message)
        self.tau_reached = tau_reached
        self.tau_estimate = tau_estimate


@dataclass(frozen=True)
class CharSystem:
    form: WaringForm
    rhs: UniPoly

    def __post_init__(self):
        ell = self.form.degree
        if self.form.is_diagonal and ell is not None and self.rhs.degree > ell:
            raise ValueError(f"need hbar <= l, got hbar={self.rhs.degree}, l={ell}")

    @property
    def n(self) -> int:
        return self.form.n


@dataclass(frozen=True)
class CharState:
    tau: complex
    z: tuple[complex, ...]
    Du: tuple[complex, ...]
    u: complex


def residual(sys: CharSystem, s: CharState) -> complex:
    """``H(Du) - P(u)``, the first integral of the system."""
    return eval_form(sys.form, [Jet(complex(x), ()) for x in s.Du]).value \
        - eval_upoly_value(sys.rhs, s.u)


def char_rhs(sys: CharSystem, s: CharState):
    """``(dz/dtau, dDu/dtau, du/dtau)`` at state ``s``."""
    grad_h = form_gradient(sys.form, s.Du)
    dp = upoly_derivative(sys.rhs, s.u)
    dDu = tuple(dp * x for x in s.Du)
    ell = sys.form.degree
    if ell is not None:
        du = ell * eval_upoly_value(sys.rhs, s.u)
    else:
        du = sum((x * g for x, g in zip(s.Du, grad_h)), 0j)
    return tuple(grad_h), dDu, du


def state_from(u: Expr, z0: Sequence[complex]) -> CharState:
    """Initial state ``(z0, grad u(z0), u(z0))`` for a known solution ``u``."""
    j = eval_jet(u, z0)
    return CharState(0j, tuple(complex(x) for x in z0), j.gradient, j.value)


def blowup_tau(sys: CharSystem, s0: CharState) -> complex | None:
    """Parameter value where ``u`` becomes infinite, when ``P = a w**h`` with ``h >= 2``.

    From ``du/dtau = l a u**h``: ``tau* = 1 / ((h-1) l a u0**(h-1))``.
    Returns ``None`` when no such singularity exists or the formula does
    not apply.
    """
    P = sys.rhs
    ell = sys.form.degree
    h = P.degree
    if ell is None or h < 2 or any(r != 0 for r, _ in P.roots) or s0.u == 0:
        return None
    return 1 / ((h - 1) * ell * P.leading * s0.u ** (h - 1))


def _segment_distance(point: complex, end: complex) -> tuple[float, float]:
    """Distance from ``point`` to the segment ``[0, end]`` and the nearest parameter."""
    if end == 0:
        return abs(point), 0.0
    t = (point * end.conjugate()).real / abs(end) ** 2
    t = min(1.0, max(0.0, t))
    return abs(point - t * end), t


def _pack(s: CharState) -> np.ndarray:
    return np.array([*s.z, *s.Du, s.u], dtype=complex)


def _unpack(y: np.ndarray, tau: complex, n: int) -> CharState:
    return CharState(complex(tau), tuple(complex(v) for v in y[:n]),
                     tuple(complex(v) for v in y[n:2 * n]), complex(y[2 * n]))


def integrate(sys: CharSystem, s0: CharState, tau_end: complex, steps: int,
              guard: float = BLOWUP_GUARD, margin: float = 0.05) -> list[CharState]:
    """Classical RK4 with ``steps`` equal steps along ``0 -> tau_end``.

    Raises :class:`BlowUpError` if the segment passes within
    ``margin * |tau*|`` of the precomputed singularity, or if ``|u|`` or
    ``|Du|`` exceeds ``guard`` during integration.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    n = sys.n
    if len(s0.z) != n or len(s0.Du) != n:
        raise ValueError(f"state dimension differs from system dimension {n}")
    tau_end = complex(tau_end)
    star = blowup_tau(sys, s0)
    if star is not None:
        dist, _ = _segment_distance(star, tau_end)
        if dist <= margin * abs(star):
            raise BlowUpError(
                f"integration segment passes the movable singularity at tau = {star:.6g}",
                None, star)
    h = tau_end / steps

    def f(y: np.ndarray, tau: complex) -> np.ndarray:
        dz, dDu, du = char_rhs(sys, _unpack(y, tau, n))
        return np.array([*dz, *dDu, du], dtype=complex)

    y = _pack(s0)
    out = [s0]
    for k in range(steps):
        tau = k * h
        k1 = f(y, tau)
        k2 = f(y + h / 2 * k1, tau + h / 2)
        k3 = f(y + h / 2 * k2, tau + h / 2)
        k4 = f(y + h * k3, tau + h)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        tau_next = (k + 1) * h
        big = max(abs(y[2 * n]), float(np.max(np.abs(y[n:2 * n]))) if n else 0.0)
        if not math.isfinite(big) or big > guard:
            raise BlowUpError(
                f"|u| or |Du| exceeded {guard:g} at tau = {tau_next:.6g}"
                + (f"; singularity estimate tau* = {star:.6g}" if star is not None else ""),
                tau_next, star)
        out.append(_unpack(y, tau_next, n))
    return out


def cross_check(sys: CharSystem, u: Expr, z0: Sequence[complex], tau_end: complex,
                steps: int) -> float:
    """Largest ``|u_integrated(tau) - u(z(tau))|`` along the trajectory from ``z0``."""
    traj = integrate(sys, state_from(u, z0), tau_end, steps)
    return max(abs(s.u - eval_value(u, s.z)) for s in traj)


def max_first_integral(sys: CharSystem, traj: Sequence[CharState]) -> float:
    return max(abs(residual(sys, s)) for s in traj)


# --- closed-form trajectories (independent oracles) ---------------------

def u_power_case(u0: complex, ell: int, hbar: int, tau: complex, leading: complex = 1) -> complex:
    """``u(tau)`` for ``du/dtau = l a u**h``: exponential for ``h = 1``, else algebraic.

    With ``h = l`` and ``a = 1`` this is ``u0 / (1 - l(l-1) u0**(l-1) tau)**(1/(l-1))``.
    """
    if hbar == 0:
        return u0 + ell * leading * tau
    if hbar == 1:
        return u0 * cmath.exp(ell * leading * tau)
    base = 1 - (hbar - 1) * ell * leading * u0 ** (hbar - 1) * tau
    return u0 * base ** (-1 / (hbar - 1))


def trajectory_hbar_one(varsigma: Sequence[complex], exponents: Sequence[int],
                        d: Sequence[complex], u0: complex, tau: complex):
    """``(z(tau), Du(tau), u(tau))`` for ``sum u_j**l_j = u`` (exponential sums).

    ``varsigma`` is the initial gradient and ``d`` the initial point; valid
    for ``l_j >= 2`` (for ``l_j = 1`` the coordinate moves linearly).
    """
    e = cmath.exp(tau)
    Du = tuple(s * e for s in varsigma)
    z = []
    for s, ell, dj in zip(varsigma, exponents, d):
        if ell == 1:
            z.append(dj + tau)
        else:
            z.append(ell / (ell - 1) * s ** (ell - 1) * (cmath.exp((ell - 1) * tau) - 1) + dj)
    u = u0 + sum((s ** ell * (cmath.exp(ell * tau) - 1) for s, ell in zip(varsigma, exponents)), 0j)
    return tuple(z), Du, u


def states_agree(a: CharState, b: CharState) -> float:
    gaps = [abs(x - y) for x, y in zip(a.z, b.z)] + [abs(x - y) for x, y in zip(a.Du, b.Du)]
    return max(gaps + [abs(a.u - b.u)])


__all__ = [
    "BlowUpError", "CharState", "CharSystem", "PATH_CONVENTION", "blowup_tau",
    "char_rhs", "cross_check", "integrate", "max_first_integral", "residual",
    "state_from", "states_agree", "trajectory_hbar_one", "u_power_case",
]
