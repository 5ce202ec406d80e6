import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maass_poincare.errors import DomainError, NumericOverflowError
from maass_poincare.numerics import (
    bessel_I,
    bessel_J,
    e,
    eulerian_numbers,
    gamma_star,
    gamma_star_lower,
    incomplete_gamma,
    polylog_neg,
)

# frozen from mpmath at 30 digits
J3_AT_1 = 0.019563353982668407
I3_AT_1 = 0.0221684249243319


def test_e_is_additive_character():
    assert e(0.25) == pytest.approx(1j, abs=1e-15)
    assert e(1.0) == pytest.approx(1.0, abs=1e-15)


def test_bessel_frozen_values():
    assert bessel_J(3, 1.0) == pytest.approx(J3_AT_1, rel=1e-14)
    assert bessel_I(3, 1.0) == pytest.approx(I3_AT_1, rel=1e-14)
    assert bessel_J(3, 0.0) == 0.0
    assert bessel_I(0, 0.0) == 1.0


@pytest.mark.parametrize("nu", [1, 3, 5, 7, 11, 13])
@pytest.mark.parametrize("x", [0.1, 1.3, 4.0, 7.9, 8.1, 15.0, 40.0, 79.5])
def test_bessel_against_mpmath(nu, x):
    jref = float(mpmath.besselj(nu, x))
    iref = float(mpmath.besseli(nu, x))
    # absolute floor near zeros of J
    assert abs(bessel_J(nu, x) - jref) <= 1e-13 * max(abs(jref), 1e-3)
    assert bessel_I(nu, x) == pytest.approx(iref, rel=1e-13)


@pytest.mark.parametrize("nu", [3, 5])
def test_bessel_recurrences(nu):
    # J_{nu-1} + J_{nu+1} = (2 nu / x) J_nu ;  I_{nu-1} - I_{nu+1} = (2 nu / x) I_nu
    x = np.linspace(0.5, 60.0, 50)
    lhs = bessel_J(nu - 1, x) + bessel_J(nu + 1, x)
    assert np.max(np.abs(lhs - 2 * nu / x * bessel_J(nu, x))) < 1e-13
    lhs = bessel_I(nu - 1, x) - bessel_I(nu + 1, x)
    assert np.allclose(lhs, 2 * nu / x * bessel_I(nu, x), rtol=1e-13)


def test_bessel_vectorized_matches_scalar():
    x = np.array([0.5, 3.0, 12.0])
    assert np.allclose(bessel_J(5, x), [bessel_J(5, float(t)) for t in x], rtol=1e-15)


def test_bessel_rejects_bad_order():
    with pytest.raises(DomainError):
        bessel_J(-1, 1.0)
    with pytest.raises(DomainError):
        bessel_I(2.5, 1.0)


def test_bessel_I_overflow():
    with pytest.raises(NumericOverflowError):
        bessel_I(3, 800.0)


def test_incomplete_gamma_closed_form():
    assert incomplete_gamma(3, 1.0) == pytest.approx(5 / math.e, rel=1e-15)
    assert incomplete_gamma(3, -1.0) == pytest.approx(math.e, rel=1e-15)
    assert incomplete_gamma(1, 2.0) == pytest.approx(math.exp(-2), rel=1e-15)
    assert gamma_star(5, 0.0) == 1.0


@pytest.mark.parametrize("s", [1, 3, 5, 11])
@pytest.mark.parametrize("y", [0.01, 0.7, 5.0, 30.0])
def test_gamma_star_against_mpmath(s, y):
    ref = mpmath.gammainc(s, y, regularized=True)
    assert gamma_star(s, y) == pytest.approx(float(ref), rel=1e-13)
    assert gamma_star_lower(s, y) == pytest.approx(float(1 - ref), rel=1e-12)


def test_gamma_star_lower_small_argument():
    # the complement would lose every digit through 1 - Gamma*
    ref = float(mpmath.gammainc(3, 0, 1e-3, regularized=True))
    assert gamma_star_lower(3, 1e-3) == pytest.approx(ref, rel=1e-13)


@pytest.mark.parametrize("s", range(1, 8))
def test_incomplete_gamma_recurrence(s):
    y = np.array([-2.0, -0.3, 0.5, 3.0, 9.0])
    lhs = incomplete_gamma(s + 1, y)
    rhs = s * incomplete_gamma(s, y) + y ** s * np.exp(-y)
    assert np.allclose(lhs, rhs, rtol=1e-14)


def test_gamma_finite_difference_derivative():
    s, y, h = 4, 2.0, 1e-5
    fd = (incomplete_gamma(s, y + h) - incomplete_gamma(s, y - h)) / (2 * h)
    assert fd == pytest.approx(-(y ** (s - 1)) * math.exp(-y), rel=1e-8)


def test_gamma_rejects_noninteger():
    with pytest.raises(DomainError):
        incomplete_gamma(2.5, 1.0)


def test_eulerian_numbers():
    assert eulerian_numbers(0) == (1,)
    assert eulerian_numbers(3) == (1, 4, 1)
    assert eulerian_numbers(4) == (1, 11, 11, 1)
    for p in range(1, 10):
        assert sum(eulerian_numbers(p)) == math.factorial(p)


def test_polylog_frozen_values():
    assert polylog_neg(3, 0.5) == pytest.approx(26.0, rel=1e-14)
    assert polylog_neg(3, 2.0) == pytest.approx(26.0, rel=1e-14)
    assert polylog_neg(0, 2.0) == pytest.approx(-2.0, rel=1e-15)
    assert polylog_neg(1, 0.5) == pytest.approx(2.0, rel=1e-15)


@pytest.mark.parametrize("p", [0, 1, 3, 5, 9])
@pytest.mark.parametrize("w", [0.3 + 0.2j, -0.7, 0.9j, 2.5 - 1j, -4.0])
def test_polylog_against_mpmath(p, w):
    ref = complex(mpmath.polylog(-p, w))
    assert abs(polylog_neg(p, w) - ref) <= 1e-12 * max(1.0, abs(ref))


def test_polylog_pole():
    with pytest.raises(ZeroDivisionError):
        polylog_neg(2, 1.0)


@settings(max_examples=60, deadline=None)
@given(
    p=st.integers(min_value=1, max_value=9).filter(lambda p: p % 2),
    r=st.floats(min_value=0.05, max_value=20.0),
    theta=st.floats(min_value=0.1, max_value=2 * math.pi - 0.1),
)
def test_polylog_inversion_property(p, r, theta):
    # odd negative order: Li_{-p}(w) = Li_{-p}(1/w)
    w = r * complex(math.cos(theta), math.sin(theta))
    a, b = polylog_neg(p, w), polylog_neg(p, 1 / w)
    assert abs(a - b) <= 1e-9 * max(1.0, abs(a))


@settings(max_examples=60, deadline=None)
@given(nu=st.integers(min_value=1, max_value=15), x=st.floats(min_value=0.0, max_value=70.0))
def test_bessel_bounded_and_positive(nu, x):
    assert abs(bessel_J(nu, x)) <= 1.0
    assert bessel_I(nu, x) >= 0.0


@settings(max_examples=60, deadline=None)
@given(s=st.integers(min_value=1, max_value=15), y=st.floats(min_value=0.0, max_value=200.0))
def test_gamma_star_split(s, y):
    assert 0.0 <= gamma_star(s, y) <= 1.0
    assert gamma_star(s, y) + gamma_star_lower(s, y) == pytest.approx(1.0, abs=1e-14)
