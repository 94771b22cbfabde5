"""Command-line front end.

Every subcommand writes one JSON document to stdout and diagnostics to
stderr.  Exit codes: 0 pass, 1 fail, 2 unconfirmed, 3 usage or spec error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import catalog
from .characteristics import (PATH_CONVENTION, BlowUpError, CharSystem,
                              integrate, residual, state_from)
from .cxjet import DimensionError, DomainError
from .expr import eval_value, to_text
from .families import (FamilyError, NullDirectionError, PhiSpec, construct,
                       dimension, make_phi, sample_annihilation, solve_null_direction)
from .parser import ParseError, parse_complex, parse_expr
from .poly import RootFindingError, expand_roots, find_roots, real_roots
from .special import LEFT_FACTOR_CASES, C4Elliptic, C5Elliptic4, verify_left_factor
from .specfile import (LoadedSpec, SpecError, cx_from_json, cx_to_json,
                       dump_spec, load_spec)
from .verify import (DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_TOL,
                     sample_points, verify_family)

EXIT_PASS, EXIT_FAIL, EXIT_UNCONFIRMED, EXIT_USAGE = 0, 1, 2, 3
VERDICT_CODES = {"pass": EXIT_PASS, "fail": EXIT_FAIL, "unconfirmed": EXIT_UNCONFIRMED}

# options whose values may start with '-' (negative numbers)
_VALUE_OPTIONS = {"--coeffs", "--c", "--ell", "--fix", "--rho", "--d", "--z0",
                  "--tau-end", "--core"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _number(text: str) -> complex:
    """A real fraction such as ``2/7`` or any constant literal of the grammar."""
    text = text.strip()
    try:
        return complex(Fraction(text))
    except (ValueError, ZeroDivisionError):
        return parse_complex(text)


def _numbers(text: str) -> list[complex]:
    return [_number(t) for t in text.split(",") if t.strip()]


def _seed(text: str) -> int:
    return int(text, 0)


def _pair(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return _number(parts[0])
    if len(parts) != 2:
        raise ValueError(f"expected RE,IM, got {text!r}")
    return complex(float(parts[0]), float(parts[1]))


def _glue_negative_values(argv: Sequence[str]) -> list[str]:
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in _VALUE_OPTIONS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="waringpde", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="verify a family spec or catalog example")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--spec", help="JSON spec file")
    src.add_argument("--example", choices=sorted(catalog.CATALOG))
    v.add_argument("--core", help="core expression for --example (variable w, or z1,z2)")
    v.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    v.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    v.add_argument("--tol", type=float, default=DEFAULT_TOL)
    v.add_argument("--dump-spec", action="store_true",
                   help="print the normalized spec instead of verifying")

    t = sub.add_parser("trace", help="integrate characteristics from family initial data")
    t.add_argument("--spec", required=True)
    t.add_argument("--tau-end", required=True, type=_pair, help="RE,IM")
    t.add_argument("--steps", required=True, type=int)
    t.add_argument("--z0", type=_numbers, help="starting point, comma separated (default 0)")

    r = sub.add_parser("roots", help="all complex roots of a polynomial")
    r.add_argument("--coeffs", required=True, type=_numbers, help="c0,c1,... ascending")

    s = sub.add_parser("solve-direction", help="null directions for weights c")
    s.add_argument("--c", required=True, type=_numbers)
    s.add_argument("--ell", required=True, help="common exponent or comma list")
    s.add_argument("--fix", action="append", default=[],
                   help="j=value with 1-based j; default fixes the last component to -1")

    o = sub.add_parser("verify-ode", help="left-factor ODE residual")
    o.add_argument("--case", required=True, help="JSON file describing the case")
    o.add_argument("--samples", type=int, default=50)
    o.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    o.add_argument("--tol", type=float, default=DEFAULT_TOL)

    f = sub.add_parser("phi", help="build a null function and check annihilation")
    f.add_argument("--variant", required=True,
                   choices=["CyclicDiff", "BaseDiff", "PairedDiff", "WeightedDiff",
                            "NullDirection", "Zero"])
    f.add_argument("--core", default=None)
    f.add_argument("--rho", type=_numbers)
    f.add_argument("--d", type=_numbers, help="direction for NullDirection")
    f.add_argument("--base", type=int, default=1, help="1-based base index for BaseDiff")
    f.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    f.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    return p


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _cmd_verify(args) -> int:
    if args.spec:
        if args.core:
            raise UsageError("--core only applies to --example")
        loaded = load_spec(args.spec)
    else:
        fam = catalog.CATALOG[args.example]
        spec = fam(args.core) if args.core else fam()
        loaded = LoadedSpec(spec, None, None, dimension(spec))
    if args.dump_spec:
        sys.stdout.write(dump_spec(loaded) + "\n")
        return EXIT_PASS
    if args.samples < 1:
        raise UsageError("--samples must be >= 1")
    report = verify_family(loaded.family, args.samples, args.seed, args.tol,
                           form=loaded.form, rhs=loaded.rhs)
    _emit(report.to_json())
    for c in report.constraints:
        if c.verdict != "pass" and not c.informational:
            print(f"{c.verdict}: {c.name} = {c.max_abs_residual:.3e}", file=sys.stderr)
    return VERDICT_CODES[report.verdict]


def _cmd_trace(args) -> int:
    loaded = load_spec(args.spec)
    u, H, P, _, _ = construct(loaded.family)
    H = loaded.form or H
    P = loaded.rhs or P
    n = loaded.dimension
    z0 = args.z0 or [0j] * n
    if len(z0) != n:
        raise UsageError(f"--z0 has {len(z0)} entries, dimension is {n}")
    system = CharSystem(H, P)
    s0 = state_from(u, z0)
    doc = {"path": PATH_CONVENTION, "tau_end": cx_to_json(args.tau_end), "steps": args.steps}
    try:
        traj = integrate(system, s0, args.tau_end, args.steps)
    except BlowUpError as e:
        doc["error"] = str(e)
        doc["tau_reached"] = None if e.tau_reached is None else cx_to_json(e.tau_reached)
        doc["blowup_tau_estimate"] = None if e.tau_estimate is None else cx_to_json(e.tau_estimate)
        _emit(doc)
        print(str(e), file=sys.stderr)
        return EXIT_FAIL
    gap = 0.0
    states = []
    for s in traj:
        fam_u = eval_value(u, s.z)
        gap = max(gap, abs(s.u - fam_u))
        states.append({
            "tau": cx_to_json(s.tau),
            "z": [cx_to_json(x) for x in s.z],
            "Du": [cx_to_json(x) for x in s.Du],
            "u": cx_to_json(s.u),
            "residual": abs(residual(system, s)),
        })
    doc["states"] = states
    doc["max_deviation_from_family"] = gap
    _emit(doc)
    return EXIT_PASS


def _cmd_roots(args) -> int:
    cs = args.coeffs
    while len(cs) > 1 and cs[-1] == 0:
        cs = cs[:-1]
    roots = find_roots(cs)
    recon = expand_roots(roots, cs[-1])
    err = max(abs(a - b) for a, b in zip(recon, cs))
    _emit({
        "coefficients": [cx_to_json(c) for c in args.coeffs],
        "roots": [cx_to_json(r) for r in roots],
        "real_roots": real_roots(roots),
        "reconstruction_error": err,
    })
    return EXIT_PASS


def _cmd_solve_direction(args) -> int:
    c = args.c
    n = len(c)
    ells = [int(x) for x in args.ell.split(",")]
    exps = ells * n if len(ells) == 1 else ells
    if len(exps) != n:
        raise UsageError(f"--ell has {len(exps)} entries for {n} weights")
    fixed = {}
    for item in args.fix:
        j, _, val = item.partition("=")
        if not val:
            raise UsageError(f"--fix expects j=value, got {item!r}")
        k = int(j) - 1
        if not 0 <= k < n:
            raise UsageError(f"--fix index {j} out of range 1..{n}")
        fixed[k] = _number(val)
    if not fixed:
        fixed = {n - 1: -1 + 0j}
    cands = solve_null_direction(c, exps, fixed)
    _emit({
        "c": [cx_to_json(x) for x in c],
        "exponents": exps,
        "fixed": {str(k + 1): cx_to_json(v) for k, v in sorted(fixed.items())},
        "candidates": [{
            "d": [cx_to_json(x) for x in cand.d],
            "residuals": {str(i): cx_to_json(v) for i, v in cand.residuals.items()},
            "max_residual": cand.max_residual,
            "source": cand.source,
        } for cand in cands],
    })
    return EXIT_PASS


def load_ode_case(doc: dict):
    """Build a left-factor case from ``{"case": name, ...}``."""
    if not isinstance(doc, dict) or "case" not in doc:
        raise SpecError("ODE case must be an object with a 'case' key")
    name = doc["case"]
    params = {k: v for k, v in doc.items() if k != "case"}
    if name not in LEFT_FACTOR_CASES:
        raise SpecError(f"unknown ODE case {name!r}; expected one of {sorted(LEFT_FACTOR_CASES)}")
    conv = {k: cx_from_json(v) for k, v in params.items()}
    try:
        if name == "C4Elliptic":
            return C4Elliptic.from_wp(**conv)
        if name == "C5Elliptic4":
            return C5Elliptic4.from_wp(**conv)
        return LEFT_FACTOR_CASES[name](**conv)
    except TypeError as e:
        raise SpecError(f"bad parameters for {name}: {e}") from None


def _cmd_verify_ode(args) -> int:
    try:
        with open(args.case) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise SpecError(f"cannot read {args.case}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SpecError(f"{args.case} is not valid JSON: {e}") from None
    case = load_ode_case(doc)
    rep = verify_left_factor(case, args.samples, args.seed)
    out = rep.to_json()
    out["tolerance"] = args.tol
    out["verdict"] = "pass" if rep.max_abs_residual <= args.tol else "fail"
    _emit(out)
    return VERDICT_CODES[out["verdict"]]


def _cmd_phi(args) -> int:
    if args.variant == "NullDirection":
        if not args.d:
            raise UsageError("NullDirection needs --d")
        n = len(args.d)
    elif args.variant == "Zero":
        if not args.rho:
            raise UsageError("--rho is needed to fix the dimension")
        n = len(args.rho)
    else:
        if not args.rho:
            raise UsageError(f"{args.variant} needs --rho")
        n = len(args.rho)
    core = None
    if args.variant != "Zero":
        if args.core is None:
            raise UsageError(f"{args.variant} needs --core")
        core = parse_expr(args.core, 1 if args.variant == "NullDirection" else n)
    spec = PhiSpec(args.variant, core=core, rho=args.rho,
                   directions=(tuple(args.d),) if args.d else (), base=args.base - 1)
    phi = make_phi(spec, n)
    doc = {"variant": args.variant, "dimension": n, "phi": to_text(phi)}
    ok = True
    if args.rho:
        worst = sample_annihilation(phi, args.rho, sample_points(n, args.samples, args.seed))
        doc["max_rel_annihilation"] = worst
        ok = worst <= 1e-10
        doc["verdict"] = "pass" if ok else "fail"
    _emit(doc)
    return EXIT_PASS if ok else EXIT_FAIL


_COMMANDS = {
    "verify": _cmd_verify,
    "trace": _cmd_trace,
    "roots": _cmd_roots,
    "solve-direction": _cmd_solve_direction,
    "verify-ode": _cmd_verify_ode,
    "phi": _cmd_phi,
}

_USER_ERRORS = (UsageError, SpecError, ParseError, FamilyError, NullDirectionError,
                DimensionError, DomainError, RootFindingError, ValueError)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(_glue_negative_values(argv))
        return _COMMANDS[args.command](args)
    except _USER_ERRORS as e:
        doc = {"error": type(e).__name__, "message": str(e)}
        if isinstance(e, ParseError):
            doc["position"] = e.position
        _emit(doc)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
