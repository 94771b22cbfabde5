import json

import pytest
from hypothesis import given, strategies as st

from conftest import SPECS
from waringpde import catalog
from waringpde.families import dimension
from waringpde.specfile import (LoadedSpec, SpecError, cx_from_json, cx_to_json,
                                dump_spec, load_spec, load_spec_dict, validate)
from waringpde.verify import verify_family

SPEC_FILES = sorted(SPECS.glob("*.json"))


@given(st.complex_numbers(allow_nan=False, allow_infinity=False))
def test_complex_round_trip(z):
    assert cx_from_json(cx_to_json(z)) == z


def test_plain_numbers_accepted():
    assert cx_from_json(2) == 2
    assert cx_from_json([0, -1]) == -1j


@pytest.mark.parametrize("path", SPEC_FILES, ids=lambda p: p.stem)
def test_spec_files_round_trip(path):
    loaded = load_spec(str(path))
    again = load_spec_dict(json.loads(dump_spec(loaded)))
    assert again.to_json() == loaded.to_json()


@pytest.mark.parametrize("name", sorted(catalog.CATALOG))
def test_catalog_round_trip_gives_identical_report(name):
    spec = catalog.CATALOG[name]()
    loaded = LoadedSpec(spec, None, None, dimension(spec))
    again = load_spec_dict(json.loads(dump_spec(loaded)))
    a = verify_family(spec, samples=20).to_json()
    b = verify_family(again.family, samples=20, form=again.form, rhs=again.rhs).to_json()
    assert a == b


@pytest.mark.parametrize("doc", [
    {},
    {"family": {"case": "T8Case9"}},
    {"family": {"case": "T8Case2", "c": [1, 2], "extra": 1}},
    {"family": {"case": "T8Case2", "c": "1,2"}},
    [1, 2],
])
def test_schema_rejects(doc):
    with pytest.raises(SpecError):
        validate(doc)


def test_missing_file():
    with pytest.raises(SpecError):
        load_spec("/nonexistent/spec.json")
