import cmath

import pytest
from hypothesis import given, strategies as st

from waringpde.cxjet import DomainError
from waringpde.special import (C1Exp, C2Moebius, C3Sin, C4Elliptic, C5Elliptic4,
                               WeierstrassParams, factored_gap,
                               laurent_coefficients, verify_left_factor, wp,
                               wp_ode_residual)


def test_first_laurent_coefficients():
    c = laurent_coefficients(4, 0, 3)
    assert c[0] == pytest.approx(0.2)
    assert c[1] == 0
    # c_4 = 3/(9*1) * c_2**2
    assert c[2] == pytest.approx(c[0] ** 2 / 3)


def test_lemniscatic_example():
    p = WeierstrassParams(4, 0)
    v, _ = wp(0.3, p)
    assert v == pytest.approx(1 / 0.09 + 0.2 * 0.09, rel=1e-5)
    assert abs(wp_ode_residual(0.3, p)) <= 1e-8


def test_degenerate_series_is_pure_pole():
    p = WeierstrassParams(0, 0)
    z = 0.4 - 0.1j
    v, d = wp(z, p)
    assert v == z ** -2
    assert d == -2 * z ** -3
    with pytest.raises(DomainError):
        factored_gap(z, p)


def test_parity():
    p = WeierstrassParams(1.5 - 1j, 0.7j)
    z = 0.2 + 0.1j
    a, da = wp(z, p)
    b, db = wp(-z, p)
    assert abs(a - b) <= 1e-12 * abs(a)
    assert abs(da + db) <= 1e-12 * abs(da)


def test_domain_errors():
    p = WeierstrassParams(1, 1)
    with pytest.raises(DomainError):
        wp(0, p)
    with pytest.raises(DomainError):
        wp(1.0, p)


@given(st.complex_numbers(max_magnitude=4), st.complex_numbers(max_magnitude=4),
       st.floats(0.1, 0.5), st.floats(0, 6.283))
def test_wp_ode_and_factored_form(g2, g3, r, t):
    p = WeierstrassParams(g2, g3)
    z = cmath.rect(r, t)
    assert abs(wp_ode_residual(z, p)) <= 1e-8
    if abs(p.discriminant) > 1e-6:
        assert abs(factored_gap(z, p)) <= 1e-9


def test_case_examples():
    assert verify_left_factor(C1Exp(2, 1, 0)).max_abs_residual <= 1e-11
    assert verify_left_factor(C3Sin(-1, 0, 1, -1)).max_abs_residual <= 1e-10
    assert verify_left_factor(C2Moebius(1, 1, 1, 0)).max_abs_residual <= 1e-9


def test_case_invariants():
    with pytest.raises(ValueError):
        C1Exp(0, 1, 0)
    with pytest.raises(ValueError):
        C2Moebius(1, 1, 2, 2)
    with pytest.raises(ValueError):
        C3Sin(1, 0, 1, 1)


def test_moebius_pole_avoidance():
    case = C2Moebius(1, 1, 1, 0)
    # A1 exp(w) = 1 at w = 0
    assert case.poles(0) == 0
    assert case.poles(2j * cmath.pi + 0.01) == pytest.approx(0.01)
    rep = verify_left_factor(case, samples=200, seed=5)
    assert rep.samples == 200
    assert case.poles(rep.worst_point) >= 1e-3


def test_elliptic_cases():
    c4 = C4Elliptic.from_wp(2, 1, 1.5, 0.3)
    assert c4.A0 == pytest.approx(4 / 1.5)
    assert verify_left_factor(c4).max_abs_residual <= 1e-8
    c5 = C5Elliptic4.from_wp(2 - 1j, 0.5, 0.7)
    assert len(c5.alphas) == 4
    assert verify_left_factor(c5).max_abs_residual <= 1e-8


def test_elliptic_with_rational_coefficient_is_measured():
    base = C4Elliptic.from_wp(2, 1, 1, 0)
    bent = C4Elliptic(base.A0, base.alphas, base.source, m1=1, a1=0.5, a2=-0.5)
    assert verify_left_factor(bent).max_abs_residual > 1e-3


def test_deterministic_reports():
    case = C3Sin(-2 + 1j, 0.3, 1j, 2)
    assert verify_left_factor(case, seed=11) == verify_left_factor(case, seed=11)
