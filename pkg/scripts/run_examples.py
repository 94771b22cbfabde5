"""Verify every catalog example and every spec file, one verdict per line.

    python scripts/run_examples.py [--samples N]

Unconfirmed instances list the decisive constraints that did not hold.
"""

import argparse
import json
from pathlib import Path

from waringpde import catalog
from waringpde.cli import load_ode_case
from waringpde.special import verify_left_factor
from waringpde.specfile import load_spec
from waringpde.verify import verify_family

SPECS = Path(__file__).resolve().parent.parent / "specs"


def show(name, report):
    print(f"{name:24s} {report.verdict:12s} PDE residual {report.pde.max_abs_residual:.2e}")
    for c in report.constraints:
        if c.verdict != "pass" and not c.informational:
            print(f"{'':24s}   {c.name}: {c.max_abs_residual:.3g}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--samples", type=int, default=200)
    args = ap.parse_args()

    print("catalog")
    for name, make in catalog.CATALOG.items():
        show(name, verify_family(make(), samples=args.samples))
    print("\nspec files")
    for path in sorted(SPECS.glob("*.json")):
        loaded = load_spec(str(path))
        show(path.stem, verify_family(loaded.family, samples=args.samples,
                                      form=loaded.form, rhs=loaded.rhs))
    print("\nleft-factor ODEs")
    for path in sorted((SPECS / "ode").glob("*.json")):
        rep = verify_left_factor(load_ode_case(json.loads(path.read_text())))
        print(f"{path.stem:24s} max residual {rep.max_abs_residual:.2e}")


if __name__ == "__main__":
    main()
