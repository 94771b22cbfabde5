import pytest
from hypothesis import given, strategies as st

from waringpde.cxjet import DimensionError, jet_vars
from waringpde.poly import (Monomial, RootFindingError, UniPoly, WaringForm,
                            eval_form, eval_form_value, eval_upoly_value,
                            expand_roots, find_roots, form_gradient, horner,
                            real_roots, upoly_derivative)

small = st.floats(-2, 2, allow_nan=False)
cxs = st.builds(complex, small, small)


def test_diagonal_form():
    H = WaringForm.diagonal([2, 3])
    assert H.degree is None
    assert eval_form_value(H, [2, 1j]) == 4 - 1j
    assert form_gradient(H, [2, 1j]) == (4, -3)


def test_form_validation():
    with pytest.raises(ValueError):
        WaringForm.diagonal([0, 2])
    with pytest.raises(ValueError):
        WaringForm(monomials=(Monomial(1, (2, 0)), Monomial(1, (1, 0))))
    with pytest.raises(ValueError):
        WaringForm()
    with pytest.raises(DimensionError):
        eval_form(WaringForm.uniform(2, 3), jet_vars([1, 2]))


@given(st.lists(cxs, min_size=1, max_size=4), st.integers(1, 4), st.data())
def test_linear_power_expansion(rho, ell, data):
    x = data.draw(st.lists(cxs, min_size=len(rho), max_size=len(rho)))
    H = WaringForm.linear_power(rho, ell)
    direct = sum(r * v for r, v in zip(rho, x)) ** ell
    assert eval_form_value(H, x) == pytest.approx(direct, rel=1e-10, abs=1e-10)


def test_unipoly_coefficients_and_derivative():
    P = UniPoly(2, ((1, 2), (-1j, 1)))
    assert P.degree == 3
    cs = P.coefficients()
    w = 0.3 + 0.4j
    assert horner(cs, w)[0] == pytest.approx(eval_upoly_value(P, w))
    assert horner(cs, w)[1] == pytest.approx(upoly_derivative(P, w))
    assert UniPoly.monomial(0, 5).coefficients() == [5]


def test_unipoly_distinct_mode():
    with pytest.raises(ValueError):
        UniPoly(1, ((1, 2),), distinct=True)
    with pytest.raises(ValueError):
        UniPoly(1, ((1, 1), (1, 1)), distinct=True)
    with pytest.raises(ValueError):
        UniPoly(0)


def test_cubic_roots():
    roots = find_roots([-152, 80, -100, 91])
    reals = real_roots(roots)
    assert len(reals) == 1
    assert 1.35 < reals[0] < 1.36
    f = lambda k: 91 * k ** 3 - 100 * k ** 2 + 80 * k - 152  # noqa: E731
    assert f(1.35) < 0 < f(1.36)
    assert max(abs(a - b) for a, b in zip(expand_roots(roots, 91), [-152, 80, -100, 91])) < 1e-8


def test_roots_sorted_and_errors():
    assert find_roots([-1, 0, 1]) == pytest.approx([-1, 1])
    with pytest.raises(ValueError):
        find_roots([1, 0])
    with pytest.raises(ValueError):
        find_roots([1])
    with pytest.raises(RootFindingError):
        find_roots([-1, 0, 0, 0, 0, 0, 0, 0, 1], max_sweeps=1)


def _separated(roots, gap=0.1):
    return all(abs(a - b) >= gap for i, a in enumerate(roots) for b in roots[:i])


@given(st.lists(cxs, min_size=1, max_size=6).filter(_separated),
       cxs.filter(lambda c: abs(c) > 0.1))
def test_roots_reconstruct_polynomial(roots, lead):
    # multiple roots are only found to ~eps**(1/m), so keep them simple
    coeffs = expand_roots(roots, lead)
    found = find_roots(coeffs)
    back = expand_roots(found, lead)
    scale = max(abs(c) for c in coeffs)
    assert max(abs(a - b) for a, b in zip(back, coeffs)) <= 1e-6 * scale
