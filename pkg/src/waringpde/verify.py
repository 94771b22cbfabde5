"""Residual engine: sample points, evaluate ``H(grad u) - P(u)`` with jets, aggregate.

Reports are deterministic functions of ``(spec, seed, samples, tolerance)``:
points come from a seeded generator and every aggregate is a maximum, so the
order in which points are evaluated cannot change the result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .cxjet import DimensionError, Jet
from .expr import Expr, eval_jet, eval_value, to_text
from .families import Constraint, FamilySpec, construct, dimension
from .poly import UniPoly, WaringForm, eval_form, eval_upoly

DEFAULT_SEED = 0xC0FFEE
DEFAULT_SAMPLES = 200
DEFAULT_TOL = 1e-9
SAMPLE_RADIUS = 2.0


def sample_points(n: int, samples: int, seed: int = DEFAULT_SEED,
                  radius: float = SAMPLE_RADIUS) -> list[tuple[complex, ...]]:
    """Uniform points in the polydisc ``|z_j| <= radius``.

    Points are drawn one at a time, so the first ``k`` points do not depend
    on ``samples``.
    """
    rng = np.random.default_rng(seed)
    pts = []
    for _ in range(samples):
        u = rng.random((n, 2))
        r = radius * np.sqrt(u[:, 0])
        t = 2 * np.pi * u[:, 1]
        pts.append(tuple(complex(a, b) for a, b in zip(r * np.cos(t), r * np.sin(t))))
    return pts


def residual_parts(u: Expr, H: WaringForm, P: UniPoly, z: Sequence[complex]
                   ) -> tuple[complex, complex, complex]:
    """``(H(grad u), P(u), difference)`` at ``z`` from one jet evaluation."""
    if len(z) != H.n:
        raise DimensionError(f"point of dimension {len(z)} for a form in {H.n} variables")
    j = eval_jet(u, z)
    lhs = eval_form(H, [Jet(g, ()) for g in j.gradient]).value
    rhs = eval_upoly(P, Jet(j.value, ())).value
    return lhs, rhs, lhs - rhs


def residual_at(u: Expr, H: WaringForm, P: UniPoly, z: Sequence[complex]) -> complex:
    return residual_parts(u, H, P, z)[2]


def grad_check(u: Expr, z: Sequence[complex], h: float = 1e-6) -> float:
    """Largest gap between jet gradient and central differences along each axis."""
    if h <= 0:
        raise ValueError("step must be positive")
    z = [complex(v) for v in z]
    g = eval_jet(u, z).gradient
    worst = 0.0
    for j in range(len(z)):
        zp, zm = list(z), list(z)
        zp[j] += h
        zm[j] -= h
        fd = (eval_value(u, zp) - eval_value(u, zm)) / (2 * h)
        worst = max(worst, abs(g[j] - fd))
    return worst


@dataclass
class ConstraintReport:
    name: str
    kind: str
    max_abs_residual: float
    worst_point: list[complex] | None
    samples: int
    seed: int
    tolerance: float
    verdict: str
    informational: bool = False
    max_rel_residual: float | None = None
    value: complex | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "kind": self.kind,
            "max_abs_residual": _num(self.max_abs_residual),
            "worst_point": None if self.worst_point is None
            else [[z.real, z.imag] for z in self.worst_point],
            "verdict": self.verdict,
            "samples": self.samples,
            "seed": self.seed,
            "tolerance": self.tolerance,
        }
        if self.value is not None:
            out["value"] = [_num(self.value.real), _num(self.value.imag)]
        if self.max_rel_residual is not None:
            out["max_rel_residual"] = _num(self.max_rel_residual)
        if self.informational:
            out["informational"] = True
        return out


@dataclass
class VerificationReport:
    instance: dict[str, Any]
    constraints: list[ConstraintReport]
    seed: int
    samples: int
    tolerance: float
    verdict: str = field(init=False)

    def __post_init__(self):
        decisive = [c.verdict for c in self.constraints if not c.informational]
        if "fail" in decisive:
            self.verdict = "fail"
        elif "unconfirmed" in decisive:
            self.verdict = "unconfirmed"
        else:
            self.verdict = "pass"

    def constraint(self, name: str) -> ConstraintReport:
        for c in self.constraints:
            if c.name == name:
                return c
        raise KeyError(name)

    @property
    def pde(self) -> ConstraintReport:
        return self.constraint(PDE_NAME)

    def to_json(self) -> dict[str, Any]:
        return {
            "instance": self.instance,
            "verdict": self.verdict,
            "constraints": [c.to_json() for c in self.constraints],
            "seed": self.seed,
            "samples": self.samples,
            "tolerance": self.tolerance,
        }


PDE_NAME = "PDE residual H(grad u) - P(u)"


def _num(x: float):
    if math.isfinite(x):
        return x
    return "nan" if math.isnan(x) else ("inf" if x > 0 else "-inf")


def _verdict(residual: float, tol: float, unconfirmed: bool) -> str:
    if residual <= tol:  # NaN compares false and fails
        return "pass"
    return "unconfirmed" if unconfirmed else "fail"


def _safe(fn, *args) -> complex:
    try:
        return complex(fn(*args))
    except (OverflowError, ZeroDivisionError, ValueError):
        return complex(math.inf)


def describe(spec: FamilySpec, u: Expr, H: WaringForm, P: UniPoly) -> dict[str, Any]:
    from .specfile import form_to_json, rhs_to_json
    return {
        "family": type(spec).__name__,
        "label": spec.label,
        "dimension": dimension(spec),
        "u": to_text(u),
        "form": form_to_json(H),
        "rhs": rhs_to_json(P),
        "unconfirmed_flag": spec.unconfirmed,
        "sampling": f"uniform in polydisc |z_j| <= {SAMPLE_RADIUS}",
    }


def verify_family(spec: FamilySpec, samples: int = DEFAULT_SAMPLES,
                  seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL,
                  form: WaringForm | None = None, rhs: UniPoly | None = None,
                  ) -> VerificationReport:
    """Check the PDE residual and every constructor constraint of ``spec``.

    ``form``/``rhs`` override the instance derived from the family, so a
    family can be checked against a separately stated PDE.
    """
    u, H, P, cons, flagged = construct(spec)
    H = form or H
    P = rhs or P
    n = dimension(spec)
    if H.n != n:
        raise DimensionError(f"form has {H.n} variables, family has dimension {n}")
    pts = sample_points(n, samples, seed)
    reports = [_pde_report(u, H, P, pts, seed, tol, flagged)]
    for c in cons:
        reports.append(_constraint_report(c, pts, seed, tol, flagged))
    return VerificationReport(describe(spec, u, H, P), reports, seed, samples, tol)


def _pde_report(u, H, P, pts, seed, tol, flagged) -> ConstraintReport:
    worst, worst_rel, where = -1.0, 0.0, None
    for z in pts:
        try:
            lhs, rhs, r = residual_parts(u, H, P, z)
            a = abs(r)
            rel = a / (1 + abs(lhs) + abs(rhs))
        except (OverflowError, ZeroDivisionError):
            a, rel = math.inf, math.inf
        if math.isnan(a):
            a = rel = math.inf
        if a > worst:
            worst, where = a, list(z)
        worst_rel = max(worst_rel, rel)
    worst = max(worst, 0.0)
    return ConstraintReport(PDE_NAME, "sampled", worst, where, len(pts), seed, tol,
                            _verdict(worst, tol, flagged), max_rel_residual=worst_rel)


def _constraint_report(c: Constraint, pts, seed, tol, flagged) -> ConstraintReport:
    if c.kind == "scalar":
        v = _safe(c.evaluate)
        a = abs(v)
        return ConstraintReport(c.name, "scalar", a, None, 1, seed, tol,
                                _verdict(a, tol, flagged), c.informational, value=v)
    worst, where = -1.0, None
    for z in pts:
        a = abs(_safe(c.evaluate, z))
        if math.isnan(a):
            a = math.inf
        if a > worst:
            worst, where = a, list(z)
    worst = max(worst, 0.0)
    return ConstraintReport(c.name, "sampled", worst, where, len(pts), seed, tol,
                            _verdict(worst, tol, flagged), c.informational)


def max_residual(u: Expr, H: WaringForm, P: UniPoly, points) -> float:
    return max(abs(residual_at(u, H, P, z)) for z in points)
