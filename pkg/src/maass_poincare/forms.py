"""Point evaluation of truncated expansions on either half-plane."""

import math
from dataclasses import dataclass, field

import numpy as np

from .arith import coset_reps, units
from .coeffs import DEFAULT_TRUNCATION, _check_harmonic, holo_expansion
from .errors import DomainError, PlaneMismatchError
from .numerics import gamma_star, gamma_star_lower, incomplete_gamma

FOUR_PI = 4.0 * math.pi
MIN_ABS_V = 1e-3
RELATIVE_TERM_CUTOFF = 1e-12


@dataclass(frozen=True)
class HalfPlanePoint:
    """A point ``tau = u + i v`` off the real line; ``plane`` follows the sign of ``v``."""

    u: float
    v: float
    plane: str = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.u) and math.isfinite(self.v)):
            raise DomainError("tau must be finite")
        if abs(self.v) < MIN_ABS_V:
            raise DomainError(f"|Im tau| = {abs(self.v):g} is below the guard {MIN_ABS_V:g}")
        object.__setattr__(self, "plane", "upper" if self.v > 0 else "lower")

    @classmethod
    def from_complex(cls, tau):
        tau = complex(tau)
        return cls(tau.real, tau.imag)

    @property
    def tau(self):
        return complex(self.u, self.v)

    def __neg__(self):
        return HalfPlanePoint(-self.u, -self.v)

    def conjugate(self):
        return HalfPlanePoint(self.u, -self.v)


def as_point(tau):
    return tau if isinstance(tau, HalfPlanePoint) else HalfPlanePoint.from_complex(tau)


def _require(point, plane):
    if point.plane != plane:
        raise PlaneMismatchError(f"expected a point in the {plane} half-plane, got {point.tau}")


def _q_power(n, tau):
    return np.exp(2j * math.pi * np.asarray(n, dtype=float) * tau)


def _csum(values):
    values = np.asarray(values, dtype=complex)
    return complex(math.fsum(values.real), math.fsum(values.imag))


@dataclass(frozen=True)
class Evaluation:
    """A truncated series value with its truncation diagnostics.

    ``capped`` is true when the last included term was still above
    ``1e-12 * |value|``, i.e. the stored ``n_max`` rather than convergence
    ended the sum.
    """

    value: complex
    n_used: int
    last_term: float
    capped: bool


def _maass_terms(exp, point):
    k, v, tau = exp.weight, point.v, point.tau
    s = 1 - k
    ns = np.array(sorted(exp.principal), dtype=float)
    principal = np.array([exp.principal[int(n)] for n in ns]) * gamma_star_lower(s, FOUR_PI * np.abs(ns) * v) * _q_power(ns, tau)
    hn = np.array(sorted(exp.holo), dtype=float)
    holo = np.array([exp.holo[int(n)] for n in hn]) * _q_power(hn, tau)
    nn = np.array(sorted(exp.nonholo), dtype=float)
    nonholo = np.array([exp.nonholo[int(n)] for n in nn]) * gamma_star(s, FOUR_PI * nn * v) * _q_power(-nn, tau)
    return principal, holo, nonholo


def _evaluation(fixed, tail_groups):
    """Sum ``fixed`` terms plus series groups ordered by increasing index."""
    pieces = [np.asarray(fixed, dtype=complex)] + [np.asarray(g, dtype=complex) for g in tail_groups]
    value = _csum(np.concatenate(pieces)) if pieces else 0j
    last = max((abs(g[-1]) for g in tail_groups if len(g)), default=0.0)
    n_used = max((len(g) for g in tail_groups), default=0)
    last = float(last)
    return Evaluation(value, int(n_used), last, bool(last > RELATIVE_TERM_CUTOFF * max(abs(value), 1e-300)))


def eval_maass_detailed(exp, tau):
    point = as_point(tau)
    _require(point, "upper")
    if not exp.harmonic:
        raise DomainError("eval_maass needs an expansion from maass_expansion")
    principal, holo, nonholo = _maass_terms(exp, point)
    return _evaluation(np.concatenate([principal, holo[:1]]), [holo[1:], nonholo])


def eval_maass(exp, tau):
    """Value of a Maass-Poincare expansion at ``tau`` in the upper half-plane.

    ``(1 - Gamma*(1-k, 4 pi m v)) q^{-m} + sum_n a^+(n) q^n
    + sum_n a^-(n) Gamma*(1-k, 4 pi n v) q^{-n}``, truncated at the
    expansion's ``n_max``.
    """
    return eval_maass_detailed(exp, tau).value


def _nonzero_support(exp):
    support = dict(exp.principal)
    for n, c in exp.holo.items():
        if n != 0:
            support[n] = support.get(n, 0.0) + c
    return support


def eichler(exp, tau):
    """Holomorphic Eichler integral ``sum_{n != 0} c(n) n^{1-kappa} q^n`` of a weight-``kappa`` expansion."""
    point = as_point(tau)
    _require(point, "upper")
    if abs(exp.constant_term) > 1e-12:
        raise DomainError("Eichler integral needs a vanishing constant term")
    kappa = exp.weight
    support = _nonzero_support(exp)
    ns = np.array(sorted(support), dtype=float)
    coeffs = np.array([support[int(n)] for n in ns])
    return _csum(coeffs / ns ** (kappa - 1) * _q_power(ns, point.tau))


def nonhol_eichler(exp, tau):
    """Non-holomorphic Eichler integral of a weight-``kappa`` expansion with real coefficients.

    ``-(4 pi)^(1-kappa) sum_{n != 0} c(n) n^(1-kappa) Gamma(kappa-1, 4 pi n v) q^{-n}``.
    Negative indices (the principal part) put a negative argument into the
    incomplete gamma function, handled by its closed form.
    """
    point = as_point(tau)
    _require(point, "upper")
    kappa = exp.weight
    support = _nonzero_support(exp)
    coeffs = np.array([support[n] for n in sorted(support)], dtype=complex)
    if coeffs.size and np.max(np.abs(coeffs.imag)) > 1e-9:
        raise DomainError("nonhol_eichler assumes real coefficients")
    ns = np.array(sorted(support), dtype=float)
    terms = coeffs.real / ns ** (kappa - 1) * incomplete_gamma(kappa - 1, FOUR_PI * ns * point.v) * _q_power(-ns, point.tau)
    return -(FOUR_PI ** (1 - kappa)) * _csum(terms)


def theorem_rhs_parts(k, m, N, tau, n_max=None, trunc=DEFAULT_TRUNCATION):
    """The two pieces ``m^(1-k) E_{P_{2-k,m}}(-tau)`` and ``-(4 pi m)^(1-k)/(-k)! P*_{2-k,-m}(-tau)``."""
    _check_harmonic(k, m)
    point = as_point(tau)
    _require(point, "lower")
    kappa = 2 - k
    mirror = -point
    cusp = holo_expansion(kappa, m, N, n_max, trunc)
    weak = holo_expansion(kappa, -m, N, n_max, trunc)
    holo_part = m ** (1 - k) * eichler(cusp, mirror)
    star_part = -((FOUR_PI * m) ** (1 - k)) / math.factorial(-k) * nonhol_eichler(weak, mirror)
    return holo_part, star_part


def theorem_rhs_lower(k, m, N, tau, n_max=None, trunc=DEFAULT_TRUNCATION):
    """``m^(1-k) (E_{P_{2-k,m}}(-tau) - (4 pi)^(1-k)/(-k)! P*_{2-k,-m}(-tau))`` for ``tau`` in the lower half-plane."""
    holo_part, star_part = theorem_rhs_parts(k, m, N, tau, n_max, trunc)
    return holo_part + star_part


def maass_seed(k, m, z):
    """Seed ``(1 - Gamma*(1-k, 4 pi m Im z)) e(-m z)`` of ``F_{k,-m}`` (vectorized over ``z``)."""
    z = np.asarray(z, dtype=complex)
    return gamma_star_lower(1 - k, FOUR_PI * m * z.imag) * np.exp(-2j * math.pi * m * z)


def eval_direct_cosets(k, m, N, tau, c_max, window=400.0):
    """Partial sum of ``F_{k,-m}`` straight from its definition as a coset average.

    Sums ``(c tau + d)^(-k) * seed(gamma tau)`` over ``coset_reps(N, c_max)``
    and, for each representative with ``c > 0``, over its right translates
    ``d -> d + c t`` with ``|c (u + t) + d| <= window``.  Slow; meant as an
    independent check of the Fourier-expansion route.
    """
    _check_harmonic(k, m)
    point = as_point(tau)
    _require(point, "upper")
    z = point.tau
    by_c = {}
    for rep in coset_reps(N, c_max):
        if rep.c:
            by_c.setdefault(rep.c, []).append(rep.d)
    pieces = [np.atleast_1d(maass_seed(k, m, z))]
    for c, ds in sorted(by_c.items()):
        lo = math.ceil((-window - c * point.u) / c) - 1
        hi = math.floor((window - c * point.u) / c) + 1
        shifts = np.arange(lo, hi + 1, dtype=np.int64)
        d = (np.array(ds, dtype=np.int64)[:, None] + c * shifts[None, :]).ravel()
        d = d[np.abs(c * point.u + d) <= window]
        residues, inverses = units(c)
        lookup = np.zeros(c, dtype=np.int64)
        lookup[residues] = inverses
        a = lookup[d % c]
        j = c * z + d
        image = a / c - 1.0 / (c * j)
        pieces.append(j ** (-k) * maass_seed(k, m, image))
    return _csum(np.concatenate(pieces))
