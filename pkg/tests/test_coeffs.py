import math

import numpy as np
import pytest
from _oracles import eisenstein, mul, ramanujan_sum, ramanujan_tau, sigma, weakly_holomorphic_over_delta

from maass_poincare.coeffs import (
    DEFAULT_TRUNCATION,
    FormParams,
    Truncation,
    a_coeff,
    a_coeffs,
    a_plus_zero,
    a_plus_zero_tail,
    a_tail,
    b_coeff,
    b_coeffs,
    b_tail,
    holo_expansion,
    maass_expansion,
)
from maass_poincare.errors import DomainError

T300 = Truncation(c_max=300)

E4, E6 = eisenstein(4, 12), eisenstein(6, 12)
# F_{-2,-1} and F_{-4,-1} are weakly holomorphic (no cusp forms in weights 4 and 6)
F_M2 = weakly_holomorphic_over_delta(mul(E4, E6), 12)
F_M4 = weakly_holomorphic_over_delta(mul(E4, E4), 12)


def test_form_params_validation():
    FormParams(-2, 1)
    for bad in [(-3, 1, 1), (-2, 0, 1), (-2, 1, 0)]:
        with pytest.raises(DomainError):
            FormParams(*bad)


def test_truncation_validation():
    assert Truncation(c_max=0).c_max == 0
    assert DEFAULT_TRUNCATION.replace(c_max=7).c_max == 7
    for bad in [dict(c_max=-1), dict(contour_nodes=0), dict(radius_factor=2 * math.pi), dict(t_cutoff=1.0)]:
        with pytest.raises(DomainError):
            Truncation(**bad)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_ramanujan_tau(n):
    ratio = b_coeff(12, 1, n, trunc=T300) / b_coeff(12, 1, 1, trunc=T300)
    assert ratio == pytest.approx(ramanujan_tau(n), abs=1e-3)


@pytest.mark.parametrize("kappa", [4, 6, 8, 10, 14])
def test_cusp_poincare_vanishes_without_cusp_forms(kappa):
    assert abs(b_coeff(kappa, 1, 1, trunc=Truncation(c_max=500))) <= 1e-3


def test_weight12_control_is_nonzero():
    assert abs(b_coeff(12, 1, 1, trunc=Truncation(c_max=500))) >= 0.5


def test_weakly_holomorphic_weight4():
    # D^3 F_{-2,-1} = -P_{4,-1}, so b_{4,-1}(n) = -n^3 * coeff_n(E4 E6 / Delta)
    ns = np.arange(1, 6)
    b = b_coeffs(4, -1, ns, trunc=T300)
    expected = np.array([-(n ** 3) * F_M2[n] for n in ns], dtype=float)
    assert np.allclose(b, expected, rtol=1e-7)


@pytest.mark.parametrize("k,oracle", [(-2, F_M2), (-4, F_M4)])
def test_maass_matches_eisenstein_quotients(k, oracle):
    ns = np.arange(1, 6)
    plus = a_coeffs(k, 1, "+", ns, trunc=T300)
    assert np.allclose(plus, [oracle[n] for n in ns], rtol=1e-8)
    assert a_plus_zero(k, 1, trunc=T300) == pytest.approx(oracle[0], rel=1e-8)
    # weakly holomorphic: the non-holomorphic part only cancels the Gamma* piece of q^{-1}
    minus = a_coeffs(k, 1, "-", ns, trunc=T300)
    assert np.allclose(minus, [1.0, 0, 0, 0, 0], atol=1e-5)


@pytest.mark.parametrize("k,m", [(-2, 1), (-2, 2), (-4, 3), (-6, 2)])
def test_a_plus_zero_ramanujan_sum_oracle(k, m):
    # K(-m, 0; c) is a Ramanujan sum; its Dirichlet series is sigma_{k-1}(m) / zeta(2-k)
    s = 2 - k
    pref = (2 * math.pi) ** s * (-1) ** (k // 2) * m ** (1 - k) / math.factorial(1 - k)
    partial = pref * math.fsum(ramanujan_sum(c, m) / c ** s for c in range(1, 301))
    assert a_plus_zero(k, m, trunc=T300) == pytest.approx(partial, rel=1e-12)
    zeta = math.fsum(1 / j ** s for j in range(1, 200000)) + 1 / ((s - 1) * 200000 ** (s - 1))
    full = pref * sigma(m, s - 1) / m ** (s - 1) / zeta
    assert abs(a_plus_zero(k, m, trunc=T300) - full) <= a_plus_zero_tail(k, m, c_max=300) + 1e-14 * abs(full)


# (2 pi)^4 / 3! * sum_{200 < c <= 400} mu(c) / c^4, from mpmath at 30 digits
A0_SHIFT_200_TO_400 = 1.0807355868353426e-06


def test_a_plus_zero_c_doubling():
    v200 = a_plus_zero(-2, 1, trunc=Truncation(c_max=200))
    v400 = a_plus_zero(-2, 1, trunc=Truncation(c_max=400))
    # the change is the true partial-sum difference, slightly above 1e-6
    assert v200 - v400 == pytest.approx(A0_SHIFT_200_TO_400, rel=1e-6)
    assert abs(v400 - v200) <= a_plus_zero_tail(-2, 1, c_max=200)


def test_tails_bound_observed_change():
    for n in (1, 3):
        lo = a_coeff(-2, 1, "+", n, trunc=Truncation(c_max=50))
        hi = a_coeff(-2, 1, "+", n, trunc=Truncation(c_max=800))
        assert abs(hi - lo) <= a_tail(-2, 1, n, c_max=50)
        lo = b_coeff(12, 1, n, trunc=Truncation(c_max=20))
        hi = b_coeff(12, 1, n, trunc=Truncation(c_max=400))
        assert abs(hi - lo) <= b_tail(12, 1, n, c_max=20)


def test_level_two_delta_term():
    # with c_max = 0 only the Kronecker delta survives
    assert b_coeff(12, 2, 2, N=2, trunc=Truncation(c_max=0)) == 1.0
    assert b_coeff(12, 2, 3, N=2, trunc=Truncation(c_max=0)) == 0.0


def test_scalar_and_vector_agree():
    v = a_coeffs(-2, 1, "-", [1, 2, 3], trunc=Truncation(c_max=40))
    assert v[2] == pytest.approx(a_coeff(-2, 1, "-", 3, trunc=Truncation(c_max=40)), rel=1e-14)


def test_expansions():
    exp = maass_expansion(-2, 1, n_max=5, trunc=Truncation(c_max=60))
    assert exp.principal == {-1: 1.0} and exp.harmonic
    assert exp.n_max == 5 and set(exp.holo) == set(range(6))
    assert ("nonholo", 5) in exp.tails
    hol = holo_expansion(4, -1, n_max=3, trunc=Truncation(c_max=60))
    assert hol.principal == {-1: 1.0} and not hol.harmonic
    assert holo_expansion(12, 1, n_max=3).principal == {}


def test_domain_errors():
    with pytest.raises(DomainError):
        a_coeff(-3, 1, "+", 1)
    with pytest.raises(DomainError):
        a_coeff(-2, 1, "?", 1)
    with pytest.raises(DomainError):
        a_coeffs(-2, 1, "+", [0, 1])
    with pytest.raises(DomainError):
        b_coeff(2, 1, 1)
    with pytest.raises(DomainError):
        b_coeff(12, 0, 1)
    with pytest.raises(DomainError):
        a_plus_zero(0, 1)
