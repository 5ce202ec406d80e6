"""Contour-integral functions H^+, H^- defined on both half-planes.

The Bessel factors of the Maass-Poincare coefficients are written as residues
of a Laurent series ``alpha(s) = sum_j beta(j) s^(-j-1)`` against ``e^{ns}``.
Summing over ``n`` under the integral produces a geometric series (for the
holomorphic part) or a polylogarithm of negative order (for the
non-holomorphic part).  Both closed forms are rational in ``e^s q``, so the
same expression makes sense for ``Im tau < 0``; nothing below branches on the
sign of ``v`` except the radius ``|s| = radius_factor * |v|`` of the contour.

The contour integrals use the equispaced trapezoid rule on the circle, which
converges geometrically for these integrands because the only singularity
inside the circle is the essential one of ``alpha`` at ``s = 0`` (a Laurent
series the rule integrates exactly up to aliasing).
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .arith import units
from .coeffs import DEFAULT_TRUNCATION, _check_harmonic, _moduli, a_plus_zero
from .errors import ConsistencyError, ConvergenceError, DomainError, NumericOverflowError, PoleError, PrecisionWarning
from .forms import as_point
from .numerics import gamma_star, polylog_neg

TWO_PI = 2.0 * math.pi
FOUR_PI = 4.0 * math.pi
POLE_TOL = 1e-8
_SERIES_TOL = 1e-17
_T_TAIL_TOL = 1e-16


@dataclass(frozen=True)
class ContourSpec:
    """Circle ``|s| = radius`` sampled at ``nodes`` equispaced points."""

    radius: float
    nodes: int

    def __post_init__(self):
        if not self.radius > 0 or self.nodes < 1:
            raise DomainError("contour needs positive radius and node count")

    def points(self):
        theta = TWO_PI * np.arange(self.nodes) / self.nodes
        return self.radius * np.exp(1j * theta)


def contour_spec(tau, trunc=DEFAULT_TRUNCATION):
    """Contour of radius ``radius_factor * |v|``: strictly inside the pole-free disc ``|s| < 2 pi |v|``."""
    point = as_point(tau)
    return ContourSpec(trunc.radius_factor * abs(point.v), trunc.contour_nodes)


@dataclass(frozen=True)
class SeriesAlphaParams:
    m: int
    c: int
    k: int
    sign: str

    def __post_init__(self):
        _check_harmonic(self.k, self.m)
        if self.c < 1:
            raise DomainError("c must be positive")
        if self.sign not in ("+", "-"):
            raise DomainError("sign must be '+' or '-'")

    @property
    def x(self):
        """``2 pi sqrt(m) / c``, half the Bessel argument at ``n = 1``."""
        return TWO_PI * math.sqrt(self.m) / self.c

    def beta(self, j):
        """``(+-1)^j (2 pi sqrt(m)/c)^(2j+1-k) / (j+1-k)!``."""
        sgn = (-1) ** j if self.sign == "-" else 1
        return sgn * self.x ** (2 * j + 1 - self.k) / math.factorial(j + 1 - self.k)


def alpha(params, s, max_terms=DEFAULT_TRUNCATION.series_terms):
    """Laurent series ``sum_{j>=0} beta(j) / s^(j+1)``, summed until terms fall below 1e-17 of the sum."""
    s = np.asarray(s, dtype=complex)
    if np.any(s == 0):
        raise DomainError("alpha has an essential singularity at s = 0")
    x2 = params.x**2
    rmin = float(np.min(np.abs(s))) if s.size else 1.0
    if x2 / rmin > 650:
        raise NumericOverflowError(f"alpha(s) ~ exp({x2 / rmin:.0f}) on |s| = {rmin:g}")
    ratio_sign = -1.0 if params.sign == "-" else 1.0
    term = params.beta(0) / s
    total = term.copy()
    for j in range(max_terms):
        if j > x2 / rmin and np.max(np.abs(term)) <= _SERIES_TOL * np.max(np.abs(total)):
            return total[()]
        term = term * (ratio_sign * x2 / (j + 2 - params.k)) / s
        total = total + term
    raise ConvergenceError(f"alpha series did not converge in {max_terms} terms")


def _check_denominator(den, v, radius_factor):
    dist = float(np.min(np.abs(den)))
    if dist < POLE_TOL:
        raise PoleError(f"contour passes within {dist:g} of a pole")
    if radius_factor <= math.pi and dist <= 0.5 * (1.0 - math.exp(-math.pi * abs(v))):
        raise ConsistencyError("pole-distance invariant violated on the contour")


def _residue_weights(params, spec, max_terms):
    """Nodes ``s_j`` and weights ``alpha(s_j) s_j / M`` of the trapezoid rule for ``(1/2 pi i) contour-integral``."""
    s = spec.points()
    return s, alpha(params, s, max_terms) * s / spec.nodes


def _phi_plus_many(c, ds, k, m, point, spec, trunc):
    s, wts = _residue_weights(SeriesAlphaParams(m, c, k, "+"), spec, trunc.series_terms)
    zq = np.exp(2j * math.pi * (np.asarray(ds, dtype=float) / c + point.tau))
    es = np.exp(s)
    den = 1.0 - es[None, :] * zq[:, None]
    _check_denominator(den, point.v, trunc.radius_factor)
    return (es[None, :] / den) @ wts


def phi_plus(c, d, k, m, tau, spec=None, trunc=DEFAULT_TRUNCATION):
    """``(1/2 pi i) * integral over |s| = r of alpha^+(s) e^s / (1 - e^s zeta_c^d q) ds``.

    Valid for ``tau`` in either half-plane.  ``spec`` defaults to
    :func:`contour_spec`.
    """
    point = as_point(tau)
    if c > 1 and math.gcd(d, c) != 1:
        raise DomainError(f"d = {d} is not a unit modulo {c}")
    spec = spec or contour_spec(point, trunc)
    return complex(_phi_plus_many(c, [d], k, m, point, spec, trunc)[0])


def t_cutoff_for(v, k, trunc=DEFAULT_TRUNCATION):
    """Upper limit ``T`` of the ``t``-integral.

    The integrand decays like ``t^(-k) exp(-2 pi |v| (2t - 1))``; ``T`` is the
    smallest value where that envelope has dropped below ``1e-16`` of its
    value at ``t = 1``.
    """
    if trunc.t_cutoff is not None:
        return trunc.t_cutoff
    a = FOUR_PI * abs(v)
    target = -math.log(_T_TAIL_TOL)
    T = 1.0 + target / a
    for _ in range(50):
        T_new = 1.0 + (target - k * math.log(T)) / a
        if abs(T_new - T) < 1e-12:
            break
        T = T_new
    return T


def _t_tail_estimate(v, k, T):
    return T ** (-k) * math.exp(-FOUR_PI * abs(v) * (T - 1.0))


def _t_rule(T, panels, order):
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(1.0, T, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    return (mid[:, None] + half[:, None] * x[None, :]).ravel(), (half[:, None] * w[None, :]).ravel()


def _phi_minus_many(c, ds, k, m, point, spec, trunc):
    s, wts = _residue_weights(SeriesAlphaParams(m, c, k, "-"), spec, trunc.series_terms)
    T = t_cutoff_for(point.v, k, trunc)
    tail = _t_tail_estimate(point.v, k, T)
    if tail > 1e-10:
        warnings.warn(f"t-integral truncated at T = {T:g} leaves relative tail ~{tail:.1e}", PrecisionWarning, stacklevel=3)
    ts, tw = _t_rule(T, trunc.t_panels, trunc.t_order)
    ds = np.asarray(ds, dtype=float)
    # log of e^{s - 4 pi v t} zeta_c^{-d} q^{-1}
    log_w = (
        s[None, None, :]
        - FOUR_PI * point.v * ts[None, :, None]
        - 2j * math.pi * (ds[:, None, None] / c + point.tau)
    )
    w = np.exp(log_w)
    _check_denominator(1.0 - w, point.v, trunc.radius_factor)
    inner = polylog_neg(1 - k, w) @ wts
    return inner @ (tw * ts ** (-k))


def phi_minus(c, d, k, m, tau, spec=None, trunc=DEFAULT_TRUNCATION):
    """``(1/2 pi i) int_1^inf t^(-k) contour-integral alpha^-(s) Li_{k-1}(e^{s - 4 pi v t} zeta_c^{-d} q^{-1}) ds dt``.

    The outer integral runs over ``[1, T]`` (see :func:`t_cutoff_for`) with
    ``trunc.t_panels`` Gauss-Legendre panels of ``trunc.t_order`` nodes; a
    :class:`PrecisionWarning` is emitted if ``T`` leaves a tail above 1e-10.
    """
    point = as_point(tau)
    if c > 1 and math.gcd(d, c) != 1:
        raise DomainError(f"d = {d} is not a unit modulo {c}")
    spec = spec or contour_spec(point, trunc)
    return complex(_phi_minus_many(c, [d], k, m, point, spec, trunc)[0])


def _fsum_complex(values):
    values = np.asarray(values, dtype=complex)
    return complex(math.fsum(values.real), math.fsum(values.imag))


def _c_terms(k, m, N, point, trunc, minus):
    """Per-modulus contributions ``(1/c) sum_d e(-m dbar/c) * [...]`` in ascending ``c``."""
    spec = contour_spec(point, trunc)
    out = []
    for c in _moduli(N, trunc.c_max).tolist():
        ds, dbars = units(c)
        twist = np.exp(-2j * math.pi * m * dbars / c)
        if minus:
            inner = _phi_minus_many(c, ds, k, m, point, spec, trunc)
        else:
            zq = np.exp(2j * math.pi * (ds / c + point.tau))
            inner = zq * _phi_plus_many(c, ds, k, m, point, spec, trunc)
        out.append(_fsum_complex(twist * inner) / c)
    return out


def H_plus_terms(k, m, N, tau, trunc=DEFAULT_TRUNCATION):
    """The fixed part ``q^{-m} + a^+(0)`` and the list of per-``c`` contributions to :func:`H_plus`."""
    _check_harmonic(k, m)
    point = as_point(tau)
    fixed = np.exp(-2j * math.pi * m * point.tau) + a_plus_zero(k, m, N, trunc)
    pref = TWO_PI * (-1) ** (k // 2) * m ** ((1 - k) / 2)
    return fixed, [pref * t for t in _c_terms(k, m, N, point, trunc, minus=False)]


def H_plus(k, m, N, tau, trunc=DEFAULT_TRUNCATION):
    """Extension of the holomorphic part of ``F_{k,-m}`` to both half-planes.

    ``q^{-m} + a^+_{k,-m}(0) + 2 pi (-1)^(k/2) m^((1-k)/2) sum_c (1/c)
    sum_d e(-m dbar/c) zeta_c^d q phi^+(c, d; tau)`` with ``c <= c_max``.
    The constant ``a^+(0)`` is truncated at the same ``c_max`` so that its
    cancellation against the ``beta^+(0)`` terms below the real line is exact
    term by term.
    """
    fixed, terms = H_plus_terms(k, m, N, tau, trunc)
    return complex(fixed) + _fsum_complex(terms)


def H_minus_terms(k, m, N, tau, trunc=DEFAULT_TRUNCATION):
    _check_harmonic(k, m)
    point = as_point(tau)
    v = point.v
    fixed = -gamma_star(1 - k, FOUR_PI * m * v) * np.exp(-2j * math.pi * m * point.tau)
    # odd integer power: negative when v < 0
    pref = TWO_PI * (-1) ** (k // 2) * (FOUR_PI * v) ** (1 - k) / math.factorial(-k) * m ** ((1 - k) / 2)
    return fixed, [pref * t for t in _c_terms(k, m, N, point, trunc, minus=True)]


def H_minus(k, m, N, tau, trunc=DEFAULT_TRUNCATION):
    """Extension of the non-holomorphic part of ``F_{k,-m}`` to both half-planes.

    ``-Gamma*(1-k, 4 pi m v) q^{-m} + 2 pi (-1)^(k/2) (4 pi v)^(1-k)/(-k)!
    m^((1-k)/2) sum_c (1/c) sum_d e(-m dbar/c) phi^-(c, d; tau)``.
    """
    fixed, terms = H_minus_terms(k, m, N, tau, trunc)
    return complex(fixed) + _fsum_complex(terms)


def H(k, m, N, tau, trunc=DEFAULT_TRUNCATION):
    """``H^+ + H^-``: equals ``F_{k,-m}`` above the real line and the Eichler-integral combination below it."""
    return H_plus(k, m, N, tau, trunc) + H_minus(k, m, N, tau, trunc)
