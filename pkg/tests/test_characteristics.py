import pytest
from hypothesis import given, strategies as st

from waringpde import catalog
from waringpde.characteristics import (BlowUpError, CharState, CharSystem,
                                       blowup_tau, char_rhs, cross_check,
                                       integrate, max_first_integral,
                                       state_from, trajectory_hbar_one,
                                       u_power_case)
from waringpde.families import PhiSpec, T3Case1, T8Case2, construct
from waringpde.expr import Var
from waringpde.poly import UniPoly, WaringForm


def _state(z, Du, u):
    return CharState(0j, tuple(map(complex, z)), tuple(map(complex, Du)), complex(u))


def test_rhs_linear_transport():
    sys_ = CharSystem(WaringForm.uniform(1, 3), UniPoly.monomial(1))
    dz, dDu, du = char_rhs(sys_, _state([0, 0, 0], [0.5, 1, 2], 3))
    assert dz == (1, 1, 1)
    assert dDu == (0.5, 1, 2)
    assert du == 3


def test_rhs_square_square():
    sys_ = CharSystem(WaringForm.uniform(2, 2), UniPoly.monomial(2))
    assert char_rhs(sys_, _state([0, 0], [0.3, -1j], 1))[2] == 2


def test_rhs_constant_rhs_freezes_gradient():
    sys_ = CharSystem(WaringForm.uniform(3, 2), UniPoly.constant(1))
    assert char_rhs(sys_, _state([1, 2], [0.3, 0.7], 5))[1] == (0, 0)


def test_mixed_exponents_use_euler_sum():
    sys_ = CharSystem(WaringForm.diagonal([2, 3]), UniPoly.constant(1))
    Du = (0.5, 2j)
    du = char_rhs(sys_, _state([0, 0], Du, 0))[2]
    assert du == pytest.approx(2 * Du[0] ** 2 + 3 * Du[1] ** 3)


def test_hbar_above_l_rejected():
    with pytest.raises(ValueError):
        CharSystem(WaringForm.uniform(2, 2), UniPoly.monomial(3))


def test_linear_flow_exact():
    sys_ = CharSystem(WaringForm.uniform(1, 3), UniPoly.constant(1))
    traj = integrate(sys_, _state([0, 0, 0], [1, 0, 0], 0), 1, 7)
    assert traj[-1].z == pytest.approx((1, 1, 1), abs=1e-15)
    assert traj[-1].u == pytest.approx(1, abs=1e-15)
    assert len(traj) == 8


def test_power_case_closed_form_and_order():
    sys_ = CharSystem(WaringForm.uniform(2, 1), UniPoly.monomial(2))
    s0 = _state([0], [1], 1)
    errs = []
    for steps in (100, 50):
        traj = integrate(sys_, s0, 0.25, steps)
        assert max_first_integral(sys_, traj) <= 1e-7
        errs.append(abs(traj[-1].u - u_power_case(1, 2, 2, 0.25)))
    assert errs[0] <= 1e-8
    assert u_power_case(1, 2, 2, 0.25) == pytest.approx(2)
    assert 12 < errs[1] / errs[0] < 20


def test_paraboloid_exponential_closed_form():
    c = (0.2 - 0.1j, 0.5)
    u = construct(T8Case2(c)).u
    z0 = (0.3, -0.4j)
    s0 = state_from(u, z0)
    sys_ = CharSystem(WaringForm.uniform(2, 2), UniPoly.monomial(1))
    end = integrate(sys_, s0, 0.5, 200)[-1]
    z, Du, uu = trajectory_hbar_one(s0.Du, (2, 2), z0, s0.u, 0.5)
    assert end.z == pytest.approx(z, abs=1e-8)
    assert end.Du == pytest.approx(Du, abs=1e-8)
    assert end.u == pytest.approx(uu, abs=1e-8)


def test_blowup_precheck():
    sys_ = CharSystem(WaringForm.uniform(2, 1), UniPoly.monomial(2))
    s0 = _state([0], [1], 1)
    assert blowup_tau(sys_, s0) == pytest.approx(0.5)
    with pytest.raises(BlowUpError) as err:
        integrate(sys_, s0, 0.6, 100)
    assert err.value.tau_estimate == pytest.approx(0.5)
    # a complex detour that stays clear of tau* integrates fine
    integrate(sys_, s0, 0.3j, 50)


def test_blowup_guard():
    sys_ = CharSystem(WaringForm.uniform(2, 1), UniPoly.monomial(2))
    with pytest.raises(BlowUpError) as err:
        integrate(sys_, _state([0], [1], 1), 0.4, 100, guard=3.0)
    assert err.value.tau_reached is not None


def test_bad_steps():
    sys_ = CharSystem(WaringForm.uniform(2, 1), UniPoly.monomial(2))
    with pytest.raises(ValueError):
        integrate(sys_, _state([0], [1], 1), 0.1, 0)


def test_cross_check_paraboloid():
    u, H, P, _, _ = construct(T8Case2((0j, 0j)))
    assert cross_check(CharSystem(H, P), u, (1, 1), 0.5, 200) <= 1e-7


def test_cross_check_linear_family_exact():
    spec = T3Case1((1, 1), 4, 2, (0.5, 0.5), 2,
                   PhiSpec("CyclicDiff", core=Var(0) * Var(1), rho=(1, 1)))
    u, H, P, _, _ = construct(spec)
    assert cross_check(CharSystem(H, P), u, (0.3, -0.2j), 1.0, 10) <= 1e-12


def test_cross_check_exponential_family():
    u, H, P, _, _ = construct(catalog.example11("sin(w)"))
    assert cross_check(CharSystem(H, P), u, (0.1, 0.2, -0.1j), 0.1, 100) <= 1e-7


@given(st.lists(st.complex_numbers(max_magnitude=1), min_size=1, max_size=4),
       st.complex_numbers(max_magnitude=0.4))
def test_first_integral_conserved(c, tau):
    u, H, P, _, _ = construct(T8Case2(tuple(c)))
    sys_ = CharSystem(H, P)
    traj = integrate(sys_, state_from(u, [0.1] * len(c)), tau, 40)
    assert max_first_integral(sys_, traj) <= 1e-7
