"""Fourier coefficients of holomorphic and Maass-Poincare series.

All coefficient formulas are truncated c-sums over ``0 < c <= c_max`` with
``N | c``.  Each term is a Kloosterman sum times a Bessel function; the sum is
accumulated in ascending ``c`` with :func:`math.fsum` so that the alternating
Kloosterman signs do not leak rounding noise into the result.

Conventions: ``kappa >= 4`` is the weight of a holomorphic series
``P_{kappa,m}``; ``k <= -2`` is the weight of the harmonic series and the
functions below always compute the series of index ``-m`` with ``m >= 1``.
"""

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .arith import kloosterman_row
from .errors import DomainError
from .numerics import bessel_I, bessel_J

FOUR_PI = 4.0 * math.pi


@dataclass(frozen=True)
class FormParams:
    """Weight ``k``, index ``m`` and level ``N`` selecting a Poincare series."""

    k: int
    m: int
    N: int = 1

    def __post_init__(self):
        if self.k % 2:
            raise DomainError(f"weight must be even, got {self.k}")
        if self.m == 0:
            raise DomainError("index must be nonzero")
        if self.N < 1:
            raise DomainError("level must be positive")


@dataclass(frozen=True)
class Truncation:
    """Every cutoff used by the package.

    ``c_max``/``n_max`` truncate the Kloosterman and Fourier sums,
    ``contour_nodes`` and ``radius_factor`` define the circle
    ``|s| = radius_factor * |v|`` of the contour integrals, ``series_terms``
    caps the Laurent series in ``1/s``, and ``t_cutoff``/``t_panels``/``t_order``
    control the Gauss-Legendre rule for the outer ``t``-integral (``t_cutoff``
    of ``None`` picks the bound automatically from ``v``).

    The defaults resolve the contour integrals to rounding for ``k`` in
    ``{-2, -4}``.  The polylogarithm in ``phi^-`` has a pole of order ``2 - k``
    near the contour, so for ``k <= -8`` raise ``contour_nodes`` to 128.
    """

    c_max: int = 300
    n_max: int = 20
    contour_nodes: int = 64
    series_terms: int = 500
    t_cutoff: float | None = None
    radius_factor: float = math.pi
    t_panels: int = 8
    t_order: int = 16

    def __post_init__(self):
        if self.c_max < 0 or self.n_max < 0:
            raise DomainError("c_max and n_max must be non-negative")
        if self.contour_nodes < 1 or self.series_terms < 1 or self.t_panels < 1 or self.t_order < 1:
            raise DomainError("node and term counts must be positive")
        if not 0.0 < self.radius_factor < 2.0 * math.pi:
            raise DomainError("radius_factor must lie in (0, 2*pi)")
        if self.t_cutoff is not None and not self.t_cutoff > 1.0:
            raise DomainError("t_cutoff must exceed 1")

    def replace(self, **changes):
        return replace(self, **changes)


DEFAULT_TRUNCATION = Truncation()


@dataclass
class FourierExpansion:
    """Truncated expansion ``f = f^+ + f^-`` at the cusp ``i*infinity``.

    ``principal`` maps negative indices to the coefficients of the growing
    terms ``q^n``; for a harmonic form the stored coefficient is the one
    multiplying ``(1 - Gamma*(1-k, 4 pi |n| v)) q^n`` and the incomplete-gamma
    factor is applied when evaluating.  ``holo[n]`` multiplies ``q^n`` for
    ``n >= 0``, and ``nonholo[n]`` multiplies ``Gamma*(1-k, 4 pi n v) q^{-n}``.
    ``tails`` carries the a-priori bound on the c-sum truncation error of each
    coefficient, keyed like ``("holo", n)``.
    """

    weight: int
    principal: dict = field(default_factory=dict)
    holo: dict = field(default_factory=dict)
    nonholo: dict = field(default_factory=dict)
    harmonic: bool = False
    trunc: Truncation | None = None
    tails: dict = field(default_factory=dict)

    @property
    def n_max(self):
        keys = list(self.holo) + list(self.nonholo)
        return max(keys) if keys else 0

    @property
    def constant_term(self):
        return self.holo.get(0, 0.0)


def _check_holo(kappa):
    if kappa % 2 or kappa < 4:
        raise DomainError(f"holomorphic Poincare series need even weight >= 4, got {kappa}")


def _check_harmonic(k, m):
    if k % 2 or k > -2:
        raise DomainError(f"Maass-Poincare series need even weight <= -2, got {k}")
    if m < 1:
        raise DomainError(f"index m must be a positive integer, got {m}")


def _moduli(N, c_max):
    return np.arange(N, c_max + 1, N, dtype=np.int64)


@lru_cache(maxsize=256)
def _kloosterman_table(m, ns, N, c_max):
    """Array ``K[i, j] = K(m, ns[j]; c_i)`` over the moduli ``c_i``."""
    cs = _moduli(N, c_max)
    table = np.array([kloosterman_row(m, ns, int(c)) for c in cs]).reshape(len(cs), len(ns))
    table.flags.writeable = False
    return table


def _bessel_csums(m_first, ns, nu, modified, N, c_max, abs_mn):
    """``sum_c K(m_first, n; c)/c * B_nu(4 pi sqrt(|mn|)/c)`` for each ``n`` in ``ns``."""
    ns = tuple(int(n) for n in ns)
    cs = _moduli(N, c_max)
    if not len(cs) or not ns:
        return np.zeros(len(ns))
    table = _kloosterman_table(m_first, ns, N, c_max)
    x = FOUR_PI * np.sqrt(np.asarray(abs_mn, dtype=float))[None, :] / cs[:, None]
    bessel = bessel_I(nu, x) if modified else bessel_J(nu, x)
    terms = table * bessel / cs[:, None]
    return np.array([math.fsum(col) for col in terms.T])


def _bessel_tail(prefactor, arg_scale, nu, N, c_max):
    """Bound on ``sum_{c > c_max, N|c} prefactor * (A/c)^nu / nu! * exp((A/c)^2)``.

    Uses ``|K| <= c`` and ``|J_nu(x)|, I_nu(x) <= (x/2)^nu / nu! * exp((x/2)^2)``
    with ``A = arg_scale`` playing the role of ``x/2 * c``.  The exponential is
    bounded by its value at the first omitted modulus and the power sum by an
    integral comparison.
    """
    j0 = c_max // N + 1
    c0 = N * j0
    power_sum = N ** (-nu) * (j0 ** (-nu) + j0 ** (1 - nu) / (nu - 1))
    return prefactor * arg_scale**nu / math.factorial(nu) * math.exp(min((arg_scale / c0) ** 2, 700.0)) * power_sum


def b_coeffs(kappa, m, ns, N=1, trunc=DEFAULT_TRUNCATION):
    """Vector of ``b_{kappa,m}(n)`` for ``n`` in ``ns`` (see :func:`b_coeff`)."""
    _check_holo(kappa)
    if m == 0:
        raise DomainError("index must be nonzero")
    ns = np.asarray(ns, dtype=np.int64)
    if np.any(ns < 1):
        raise DomainError("b coefficients are indexed by n >= 1")
    nu = kappa - 1
    sign = (-1) ** (kappa // 2)
    csum = _bessel_csums(m, ns, nu, m < 0, N, trunc.c_max, np.abs(m * ns))
    scale = (ns / abs(m)) ** (nu / 2)
    delta = (ns == m).astype(float)
    return scale * (delta + 2 * math.pi * sign * csum)


def b_coeff(kappa, m, n, N=1, trunc=DEFAULT_TRUNCATION):
    """Coefficient of ``q^n`` in the holomorphic Poincare series ``P_{kappa,m}``.

    For ``m > 0`` (cusp forms) this is
    ``(n/m)^((kappa-1)/2) (delta_{m,n} + 2 pi (-1)^(kappa/2) sum_c K(m,n;c)/c J_{kappa-1}(4 pi sqrt(mn)/c))``;
    for ``m < 0`` the delta term is absent and ``J`` becomes ``I`` with
    ``|mn|`` under the root.  Use :func:`b_tail` for the truncation bound.
    """
    return float(b_coeffs(kappa, m, [n], N, trunc)[0])


def b_tail(kappa, m, n, N=1, c_max=DEFAULT_TRUNCATION.c_max):
    nu = kappa - 1
    pref = 2 * math.pi * (n / abs(m)) ** (nu / 2)
    return _bessel_tail(pref, 2 * math.pi * math.sqrt(abs(m * n)), nu, N, c_max)


def a_plus_zero(k, m, N=1, trunc=DEFAULT_TRUNCATION):
    """Constant term of the holomorphic part of ``F_{k,-m}``.

    ``(2 pi)^(2-k) (-1)^(k/2) m^(1-k) / (1-k)! * sum_c K(-m, 0; c) / c^(2-k)``,
    which is the general formula evaluated at index ``-m`` (the odd power
    ``(-m)^(1-k)`` supplies one sign).
    """
    _check_harmonic(k, m)
    cs = _moduli(N, trunc.c_max)
    if not len(cs):
        return 0.0
    ks = _kloosterman_table(-m, (0,), N, trunc.c_max)[:, 0]
    total = math.fsum(ks / cs.astype(float) ** (2 - k))
    pref = (2 * math.pi) ** (2 - k) * (-1) ** (k // 2) * m ** (1 - k) / math.factorial(1 - k)
    return pref * total


def a_plus_zero_tail(k, m, N=1, c_max=DEFAULT_TRUNCATION.c_max):
    nu = 1 - k
    pref = (2 * math.pi) ** (2 - k) * m ** (1 - k) / math.factorial(1 - k)
    j0 = c_max // N + 1
    return pref * N ** (-nu) * (j0 ** (-nu) + j0 ** (1 - nu) / (nu - 1))


def a_coeffs(k, m, sign, ns, N=1, trunc=DEFAULT_TRUNCATION):
    """Vector of ``a^sign_{k,-m}(n)`` for ``n`` in ``ns`` (see :func:`a_coeff`)."""
    _check_harmonic(k, m)
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    ns = np.asarray(ns, dtype=np.int64)
    if np.any(ns < 1):
        raise DomainError("a coefficients are indexed by n >= 1")
    nu = 1 - k
    eps = 1 if sign == "+" else -1
    # index -m: eps*n > 0 takes the I-Bessel branch, eps*n < 0 the J-Bessel one
    csum = _bessel_csums(-m, eps * ns, nu, eps > 0, N, trunc.c_max, m * ns)
    return 2 * math.pi * (-1) ** (k // 2) * (m / ns) ** (nu / 2) * csum


def a_coeff(k, m, sign, n, N=1, trunc=DEFAULT_TRUNCATION):
    """Coefficient ``a^sign_{k,-m}(n)``, ``n >= 1``, of the Maass-Poincare series ``F_{k,-m}``.

    ``2 pi (-1)^(k/2) (m/n)^((1-k)/2) sum_c K(-m, sign*n; c)/c * B(4 pi sqrt(mn)/c)``
    with ``B = I_{1-k}`` for ``sign == '+'`` (holomorphic part) and
    ``B = J_{1-k}`` for ``sign == '-'`` (non-holomorphic part).
    """
    return float(a_coeffs(k, m, sign, [n], N, trunc)[0])


def a_tail(k, m, n, N=1, c_max=DEFAULT_TRUNCATION.c_max):
    nu = 1 - k
    pref = 2 * math.pi * (m / n) ** (nu / 2)
    return _bessel_tail(pref, 2 * math.pi * math.sqrt(m * n), nu, N, c_max)


def maass_expansion(k, m, N=1, n_max=None, trunc=DEFAULT_TRUNCATION):
    """Truncated Fourier expansion of the Maass-Poincare series ``F_{k,-m}``.

    The principal part is the single entry ``{-m: 1}``; the factor
    ``1 - Gamma*(1-k, 4 pi m v)`` multiplying it is applied at evaluation time.
    """
    _check_harmonic(k, m)
    n_max = trunc.n_max if n_max is None else n_max
    ns = np.arange(1, n_max + 1)
    plus = a_coeffs(k, m, "+", ns, N, trunc) if n_max else []
    minus = a_coeffs(k, m, "-", ns, N, trunc) if n_max else []
    holo = {0: a_plus_zero(k, m, N, trunc)}
    holo.update({int(n): float(a) for n, a in zip(ns, plus)})
    nonholo = {int(n): float(a) for n, a in zip(ns, minus)}
    tails = {("holo", 0): a_plus_zero_tail(k, m, N, trunc.c_max)}
    for n in ns.tolist():
        tails[("holo", n)] = tails[("nonholo", n)] = a_tail(k, m, n, N, trunc.c_max)
    return FourierExpansion(
        weight=k, principal={-m: 1.0}, holo=holo, nonholo=nonholo,
        harmonic=True, trunc=trunc.replace(n_max=n_max), tails=tails,
    )


def holo_expansion(kappa, m, N=1, n_max=None, trunc=DEFAULT_TRUNCATION):
    """Truncated q-expansion of ``P_{kappa,m}``: ``sum_{n>=1} b(n) q^n`` plus ``q^m`` if ``m < 0``."""
    _check_holo(kappa)
    n_max = trunc.n_max if n_max is None else n_max
    ns = np.arange(1, n_max + 1)
    bs = b_coeffs(kappa, m, ns, N, trunc) if n_max else []
    return FourierExpansion(
        weight=kappa,
        principal={m: 1.0} if m < 0 else {},
        holo={int(n): float(b) for n, b in zip(ns, bs)},
        trunc=trunc.replace(n_max=n_max),
        tails={("holo", int(n)): b_tail(kappa, m, int(n), N, trunc.c_max) for n in ns},
    )
