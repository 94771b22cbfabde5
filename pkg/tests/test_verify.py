import json

import pytest
from hypothesis import given, strategies as st

from waringpde import catalog
from waringpde.cxjet import DimensionError
from waringpde.expr import Var
from waringpde.families import construct
from waringpde.poly import UniPoly, WaringForm
from waringpde.verify import (PDE_NAME, grad_check, max_residual, residual_at,
                              residual_parts, sample_points, verify_family)


def test_residual_hand_computed():
    # u = z1^2 against u_1^2 + u_2^2 = u: 4 z1^2 - z1^2
    u = Var(0) ** 2
    H, P = WaringForm.uniform(2, 2), UniPoly.monomial(1)
    assert residual_at(u, H, P, (1, 0)) == 3
    lhs, rhs, diff = residual_parts(u, H, P, (2j, 5))
    assert (lhs, rhs, diff) == (-16, -4, -12)


def test_linear_eikonal_point():
    u, H, P, _, _ = construct(catalog.example9(core=Var(0) * 0))
    assert abs(residual_at(u, H, P, (1, 1j, -2))) <= 1e-15


def test_paraboloid_point():
    u, H, P, _, _ = construct(catalog.paraboloid())
    assert residual_at(u, H, P, (1 + 1j, 2)) == 0


def test_mixed_form_point():
    u, H, P, _, _ = construct(catalog.example12(core=Var(0) * 0))
    assert abs(residual_at(u, H, P, [0.5j] * 7)) <= 1e-14


def test_dimension_mismatch():
    with pytest.raises(DimensionError):
        residual_at(Var(0), WaringForm.uniform(2, 2), UniPoly.constant(1), (1, 2, 3))


def test_grad_check():
    assert grad_check(Var(0) ** 3 * Var(1), (0.5, 1j)) <= 1e-8
    with pytest.raises(ValueError):
        grad_check(Var(0), (1,), h=0)


def test_sampling_is_polydisc_and_prefix_stable():
    pts = sample_points(3, 50, seed=7)
    assert all(abs(z) <= 2 for p in pts for z in p)
    assert sample_points(3, 10, seed=7) == pts[:10]
    assert sample_points(3, 10, seed=8) != pts[:10]


def test_report_is_deterministic():
    spec = catalog.example9("sin(w)")
    a = verify_family(spec, samples=40)
    b = verify_family(spec, samples=40)
    assert a.to_json() == b.to_json()


@given(st.integers(1, 60), st.integers(1, 60))
def test_max_is_monotone_in_samples(k, extra):
    u, H, P, _, _ = construct(catalog.example11("sin(w)"))
    pts = sample_points(3, k + extra)
    assert max_residual(u, H, P, pts[:k]) <= max_residual(u, H, P, pts)


def test_verdicts():
    assert verify_family(catalog.example9()).verdict == "pass"
    assert verify_family(catalog.paraboloid((1, -0.5j))).pde.max_abs_residual == 0
    rep = verify_family(catalog.example10())
    assert rep.verdict == "unconfirmed"
    assert rep.pde.max_abs_residual > 1
    assert rep.constraint("null[iota=1]: sum sigma^2 d").verdict == "pass"
    assert rep.constraint("null[iota=2]: sum sigma d^2").max_abs_residual > 1


def test_informational_constraint_never_decides():
    rep = verify_family(catalog.example9("sin(w)"))
    info = [c for c in rep.constraints if c.informational]
    assert info
    assert rep.verdict == "pass"


def test_unflagged_failure_is_fail():
    spec = catalog.example9()
    # right side off by a constant: the PDE residual is exactly 1
    rep = verify_family(spec, samples=5, rhs=UniPoly.constant(2))
    assert rep.pde.max_abs_residual == pytest.approx(1)
    assert rep.verdict == "fail"


def test_report_json_shape():
    doc = verify_family(catalog.example10(), samples=10).to_json()
    json.dumps(doc)
    assert set(doc) == {"instance", "verdict", "constraints", "seed", "samples", "tolerance"}
    pde = doc["constraints"][0]
    assert pde["name"] == PDE_NAME
    assert len(pde["worst_point"]) == 3
    assert doc["instance"]["unconfirmed_flag"] is True
