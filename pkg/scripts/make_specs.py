"""Regenerate the JSON spec files under specs/ from the catalog.

    python scripts/make_specs.py [outdir]
"""

import json
import sys
from pathlib import Path

from waringpde import catalog
from waringpde.expr import Var
from waringpde.families import PhiSpec, T3Case1, T3Case4, T8Case3, dimension
from waringpde.specfile import LoadedSpec, dump_spec

FAMILIES = {
    "example9": catalog.example9("sin(w)"),
    "example9_linear": catalog.example9(),
    "example10": catalog.example10("sin(w)"),
    "example11": catalog.example11(),
    "example11_cubic": catalog.example11_cubic("sin(w)"),
    "example12": catalog.example12(),
    "paraboloid": catalog.paraboloid((1 + 0j, -0.5j)),
    "t3_linear": T3Case1((1, 1), 4, 2, (0.5, 0.5), 2,
                         PhiSpec("CyclicDiff", core=Var(0) * Var(1), rho=(1, 1))),
    "t3_cosh": T3Case4((1, 0.5), 1, 2, (0.6, 0.8), 1, 1, -1,
                       PhiSpec("WeightedDiff", core=Var(0) ** 2 * 0.1, rho=(1, 0.5))),
    "t8_power": T8Case3(2, 1, (0.6, 0.8), PhiSpec.zero()),
}

ODE_CASES = {
    "c1_exp": {"case": "C1Exp", "A0": [2, 0], "A1": [1, 0], "alpha1": [0, 0]},
    "c2_moebius": {"case": "C2Moebius", "A0": [1, 0], "A1": [1, 0], "alpha1": [1, 0], "alpha2": [0, 0]},
    "c3_sin": {"case": "C3Sin", "A0": [-1, 0], "A1": [0, 0], "alpha1": [1, 0], "alpha2": [-1, 0]},
    "c4_elliptic": {"case": "C4Elliptic", "g2": [2, 0], "g3": [1, 0], "scale": [1.5, 0], "shift": [0.3, 0]},
    "c5_elliptic": {"case": "C5Elliptic4", "g2": [2, 0], "g3": [1, 0], "c": [0.7, 0]},
}


def main(outdir: str = "specs") -> None:
    out = Path(outdir)
    (out / "ode").mkdir(parents=True, exist_ok=True)
    for name, fam in FAMILIES.items():
        text = dump_spec(LoadedSpec(fam, None, None, dimension(fam)))
        (out / f"{name}.json").write_text(text + "\n")
    for name, doc in ODE_CASES.items():
        (out / "ode" / f"{name}.json").write_text(json.dumps(doc, indent=2) + "\n")
    print(f"wrote {len(FAMILIES)} family specs and {len(ODE_CASES)} ODE cases to {out}")


if __name__ == "__main__":
    main(*sys.argv[1:])
