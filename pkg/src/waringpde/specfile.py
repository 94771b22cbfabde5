"""JSON spec files: schema validation and (de)serialization of families and instances.

Complex numbers are ``[re, im]`` (plain JSON numbers are accepted for real
values); expressions are strings in the parser grammar.  Every object is
validated against a closed schema before anything is built, so unknown keys
are errors.
"""

from __future__ import annotations

import json
from dataclasses import MISSING, dataclass, fields, replace
from typing import Any

import jsonschema

from .expr import Expr, arity, to_text
from .families import (FAMILY_CASES, ExampleDirect, FamilySpec, PhiSpec,
                       T8Case4, dimension)
from .parser import parse_expr
from .poly import Monomial, UniPoly, WaringForm


class SpecError(ValueError):
    """A spec file is unreadable, violates the schema, or is inconsistent."""


_CX = {"oneOf": [
    {"type": "number"},
    {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
]}
_CXVEC = {"type": "array", "items": _CX, "minItems": 1}
_INT = {"type": "integer"}

_PHI = {
    "type": "object",
    "properties": {
        "variant": {"enum": ["CyclicDiff", "BaseDiff", "PairedDiff", "WeightedDiff",
                             "NullDirection", "Zero"]},
        "core": {"type": "string"},
        "rho": _CXVEC,
        "directions": {"type": "array", "items": _CXVEC},
        "base": {"type": "integer", "minimum": 0},
    },
    "required": ["variant"],
    "additionalProperties": False,
}

# per-case parameter types: "cx", "cxvec", "int", "intvec", "phi", "psi"
_FIELDS = {
    "T3Case1": {"rho": "cxvec", "c0": "cx", "ell": "int", "sigma": "cxvec", "root": "cx", "phi": "phi"},
    "T3Case2": {"rho": "cxvec", "c0": "cx", "ell": "int", "hbar": "int", "sigma": "cxvec",
                "root": "cx", "a1": "cx", "phi": "phi"},
    "T3Case3": {"rho": "cxvec", "c0": "cx", "ell": "int", "sigma": "cxvec", "root": "cx",
                "a1": "cx", "phi": "phi"},
    "T3Case4": {"rho": "cxvec", "c0": "cx", "ell": "int", "sigma": "cxvec", "root": "cx",
                "a1": "cx", "a2": "cx", "phi": "phi"},
    "T8Case1": {"exponents": "intvec", "sigma": "cxvec", "phi": "phi"},
    "T8Case2": {"c": "cxvec"},
    "T8Case3": {"ell": "int", "hbar": "int", "sigma": "cxvec", "phi": "phi"},
    "T8Case4": {"ell": "int", "sigma": "cxvec", "psi": "psi"},
}
_SCHEMA_OF = {"cx": _CX, "cxvec": _CXVEC, "int": _INT,
              "intvec": {"type": "array", "items": _INT, "minItems": 1},
              "phi": _PHI, "psi": {"oneOf": [{"type": "string"}, _PHI]}}
_COMMON = {"label": {"type": "string"}, "unconfirmed": {"type": "boolean"}}


def _family_schema(case: str) -> dict:
    props = {"case": {"const": case}, **_COMMON}
    props.update({k: _SCHEMA_OF[t] for k, t in _FIELDS[case].items()})
    required = ["case"] + [k for k in _FIELDS[case] if _is_required(FAMILY_CASES[case], k)]
    return {"type": "object", "properties": props, "required": required,
            "additionalProperties": False}


def _is_required(cls, name: str) -> bool:
    f = {f.name: f for f in fields(cls)}[name]
    return f.default is MISSING and f.default_factory is MISSING


_DIRECT = {
    "type": "object",
    "properties": {"direct": {
        "type": "object",
        "properties": {"u": {"type": "string"}, **_COMMON},
        "required": ["u"],
        "additionalProperties": False,
    }},
    "required": ["direct"],
    "additionalProperties": False,
}

_FORM = {"oneOf": [
    {"type": "object", "properties": {"diagonal": {"type": "array", "items": _INT, "minItems": 1}},
     "required": ["diagonal"], "additionalProperties": False},
    {"type": "object", "properties": {"monomials": {"type": "array", "minItems": 1, "items": {
        "type": "object",
        "properties": {"coeff": _CX, "exponents": {"type": "array", "items": _INT}},
        "required": ["coeff", "exponents"], "additionalProperties": False}}},
     "required": ["monomials"], "additionalProperties": False},
]}

_RHS = {"oneOf": [
    {"type": "object",
     "properties": {"leading": _CX, "roots": {"type": "array", "items": {
         "type": "object",
         "properties": {"value": _CX, "mult": {"type": "integer", "minimum": 1}},
         "required": ["value", "mult"], "additionalProperties": False}}},
     "required": ["leading"], "additionalProperties": False},
    {"type": "object",
     "properties": {"power": {"type": "integer", "minimum": 0}, "leading": _CX},
     "required": ["power"], "additionalProperties": False},
]}

SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "dimension": {"type": "integer", "minimum": 1},
        "form": _FORM,
        "rhs": _RHS,
        "family": {"oneOf": [_family_schema(c) for c in _FIELDS] + [_DIRECT]},
        "phi": _PHI,
    },
    "required": ["family"],
    "additionalProperties": False,
}


# --- scalars -----------------------------------------------------------------

def cx_from_json(v) -> complex:
    if isinstance(v, list):
        return complex(v[0], v[1])
    return complex(v)


def cx_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _vec(v) -> tuple[complex, ...]:
    return tuple(cx_from_json(x) for x in v)


# --- forms and right sides -------------------------------------------------

def form_to_json(H: WaringForm) -> dict:
    if H.is_diagonal:
        return {"diagonal": list(H.exponents)}
    return {"monomials": [{"coeff": cx_to_json(m.coeff), "exponents": list(m.exponents)}
                          for m in H.monomials]}


def form_from_json(d: dict) -> WaringForm:
    if "diagonal" in d:
        return WaringForm.diagonal(d["diagonal"])
    return WaringForm(monomials=tuple(Monomial(cx_from_json(m["coeff"]), tuple(m["exponents"]))
                                      for m in d["monomials"]))


def rhs_to_json(P: UniPoly) -> dict:
    return {"leading": cx_to_json(P.leading),
            "roots": [{"value": cx_to_json(r), "mult": m} for r, m in P.roots]}


def rhs_from_json(d: dict) -> UniPoly:
    if "power" in d:
        return UniPoly.monomial(d["power"], cx_from_json(d.get("leading", 1)))
    return UniPoly(cx_from_json(d["leading"]),
                   tuple((cx_from_json(r["value"]), r["mult"]) for r in d.get("roots", [])))


# --- Phi ---------------------------------------------------------------------

def phi_to_json(p: PhiSpec) -> dict:
    out: dict[str, Any] = {"variant": p.variant}
    if p.core is not None:
        out["core"] = to_text(p.core)
    if p.rho is not None:
        out["rho"] = [cx_to_json(r) for r in p.rho]
    if p.directions:
        out["directions"] = [[cx_to_json(x) for x in d] for d in p.directions]
    if p.base:
        out["base"] = p.base
    return out


def phi_from_json(d: dict) -> PhiSpec:
    core = None
    if "core" in d:
        k = len(d["directions"]) if d["variant"] == "NullDirection" and "directions" in d else None
        core = _parse_core(d["core"], k)
    return PhiSpec(d["variant"], core=core,
                   rho=_vec(d["rho"]) if "rho" in d else None,
                   directions=tuple(_vec(x) for x in d.get("directions", [])),
                   base=d.get("base", 0))


MAX_CORE_ARITY = 64


def _parse_core(text: str, k: int | None) -> Expr:
    # difference-variant cores have as many coordinates as the family
    # dimension allows, which is only known later; make_phi checks it
    return parse_expr(text, k if k is not None else MAX_CORE_ARITY)


# --- families ----------------------------------------------------------------

def family_to_json(spec: FamilySpec) -> dict:
    if isinstance(spec, ExampleDirect):
        out: dict[str, Any] = {"u": to_text(spec.u)}
        if spec.label:
            out["label"] = spec.label
        if spec.unconfirmed:
            out["unconfirmed"] = True
        return {"direct": out}
    case = type(spec).__name__
    out = {"case": case}
    for name, kind in _FIELDS[case].items():
        v = getattr(spec, name)
        if kind == "cx":
            out[name] = cx_to_json(v)
        elif kind == "cxvec":
            out[name] = [cx_to_json(x) for x in v]
        elif kind in ("int",):
            out[name] = int(v)
        elif kind == "intvec":
            out[name] = [int(x) for x in v]
        elif kind == "phi":
            out[name] = phi_to_json(v)
        elif kind == "psi":
            out[name] = phi_to_json(v) if isinstance(v, PhiSpec) else to_text(v)
    if spec.label:
        out["label"] = spec.label
    if spec.unconfirmed:
        out["unconfirmed"] = True
    return out


def _family_from_json(d: dict, n: int | None, form, rhs) -> FamilySpec:
    common = {"label": d.get("label", ""), "unconfirmed": d.get("unconfirmed", False)}
    if "direct" in d:
        inner = d["direct"]
        if n is None or form is None or rhs is None:
            raise SpecError("a direct family needs top-level dimension, form and rhs")
        return ExampleDirect(parse_expr(inner["u"], n), form, rhs, n,
                             label=inner.get("label", ""),
                             unconfirmed=inner.get("unconfirmed", False))
    case = d["case"]
    kwargs: dict[str, Any] = {}
    for name, kind in _FIELDS[case].items():
        if name not in d:
            continue
        v = d[name]
        if kind == "cx":
            kwargs[name] = cx_from_json(v)
        elif kind == "cxvec":
            kwargs[name] = _vec(v)
        elif kind == "int":
            kwargs[name] = v
        elif kind == "intvec":
            kwargs[name] = tuple(v)
        elif kind == "phi":
            kwargs[name] = phi_from_json(v)
        elif kind == "psi":
            if isinstance(v, str):
                size = len(d["sigma"])
                kwargs[name] = parse_expr(v, size)
            else:
                kwargs[name] = phi_from_json(v)
    return FAMILY_CASES[case](**kwargs, **common)


@dataclass(frozen=True)
class LoadedSpec:
    family: FamilySpec
    form: WaringForm | None
    rhs: UniPoly | None
    dimension: int
    phi_override: bool = False

    def to_json(self) -> dict:
        out: dict[str, Any] = {"dimension": self.dimension}
        if self.form is not None:
            out["form"] = form_to_json(self.form)
        if self.rhs is not None:
            out["rhs"] = rhs_to_json(self.rhs)
        out["family"] = family_to_json(self.family)
        return out


def validate(doc: Any) -> None:
    try:
        jsonschema.validate(doc, SCHEMA)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise SpecError(f"schema violation at {where}: {e.message}") from None


def load_spec_dict(doc: Any) -> LoadedSpec:
    """Validate and build a spec from an already-parsed JSON document."""
    validate(doc)
    n = doc.get("dimension")
    form = form_from_json(doc["form"]) if "form" in doc else None
    rhs = rhs_from_json(doc["rhs"]) if "rhs" in doc else None
    try:
        fam = _family_from_json(doc["family"], n, form, rhs)
        override = False
        if "phi" in doc:
            fam = _apply_phi(fam, phi_from_json(doc["phi"]))
            override = True
        dim = dimension(fam)
    except (TypeError, KeyError) as e:
        raise SpecError(f"malformed family: {e}") from None
    if n is not None and n != dim:
        raise SpecError(f"dimension {n} differs from the family dimension {dim}")
    if form is not None and form.n != dim:
        raise SpecError(f"form has {form.n} variables, family has dimension {dim}")
    if isinstance(fam, ExampleDirect) and arity(fam.u) > dim:
        raise SpecError("u uses more variables than the dimension")
    return LoadedSpec(fam, form, rhs, dim, override)


def _apply_phi(fam: FamilySpec, phi: PhiSpec) -> FamilySpec:
    if isinstance(fam, T8Case4):
        return replace(fam, psi=phi)
    if any(f.name == "phi" for f in fields(fam)):
        return replace(fam, phi=phi)
    raise SpecError(f"family {type(fam).__name__} takes no phi")


def load_spec(path: str) -> LoadedSpec:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise SpecError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise SpecError(f"{path} is not valid JSON: {e}") from None
    return load_spec_dict(doc)


def dump_spec(spec: LoadedSpec) -> str:
    return json.dumps(spec.to_json(), indent=2)
