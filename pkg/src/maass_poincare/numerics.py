"""Special functions used throughout the package.

Everything here works in float64 / complex128 and accepts either scalars or
numpy arrays.  Scalars in give Python scalars out.

* Bessel ``J_nu`` and ``I_nu`` of integer order and non-negative argument.
* The upper incomplete gamma function ``Gamma(s, y)`` for integer ``s >= 1``
  and *any* real ``y`` (negative arguments occur on the lower half-plane),
  together with its normalized form and the normalized complement.
* Polylogarithms ``Li_{-p}(w)`` of non-positive integer order, which are
  rational functions of ``w``.
"""

import math
import warnings
from functools import lru_cache

import numpy as np

from .errors import DomainError, NumericOverflowError, PoleError, PrecisionWarning, ConvergenceError

TWO_PI = 2.0 * math.pi

# largest y with exp(y) finite in float64
_EXP_MAX = 709.78
_SERIES_TOL = 1e-17
_SERIES_CAP = 10_000
# J series loses roughly exp(x)/|J| to cancellation; switch to Miller above this
_J_SERIES_MAX_X = 8.0


def e(x):
    """Return ``exp(2*pi*i*x)``."""
    return np.exp(2j * math.pi * np.asarray(x, dtype=float))[()]


def _as_float_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    if scalar:
        return arr.item()
    return arr


def _check_order(nu):
    if int(nu) != nu or nu < 0:
        raise DomainError(f"Bessel order must be a non-negative integer, got {nu!r}")
    return int(nu)


def _bessel_series(nu, x, sign):
    """Power series sum_j sign^j (x/2)^(2j+nu) / (j! (j+nu)!)."""
    half = 0.5 * x
    h = half * half
    term = half**nu / math.factorial(nu)
    total = term.copy()
    xmax = float(x.max()) if x.size else 0.0
    for j in range(1, _SERIES_CAP):
        term = term * (sign * h / (j * (j + nu)))
        total = total + term
        if j > xmax / 2 and np.all(np.abs(term) <= _SERIES_TOL * np.abs(total)):
            return total
    raise ConvergenceError("Bessel power series did not converge")


def _bessel_j_miller(nu, x):
    """Miller backward recurrence normalized by J_0 + 2 sum J_2k = 1."""
    top = max(nu, int(x.max()))
    start = 2 * ((top + 30 + int(math.sqrt(60 * max(top, 1)))) // 2)
    bjp = np.zeros_like(x)
    bj = np.ones_like(x)
    norm = 2.0 * bj if start % 2 == 0 else np.zeros_like(x)
    ans = np.zeros_like(x)
    for order in range(start, 0, -1):
        bjm = (2.0 * order / x) * bj - bjp
        bjp, bj = bj, bjm
        o = order - 1
        if o == nu:
            ans = bj.copy()
        if o % 2 == 0:
            norm = norm + (bj if o == 0 else 2.0 * bj)
        big = np.abs(bj) > 1e250
        if big.any():
            scale = np.where(big, 1e-250, 1.0)
            bj, bjp, norm, ans = bj * scale, bjp * scale, norm * scale, ans * scale
    return ans / norm


def bessel_J(nu, x):
    """Bessel function of the first kind ``J_nu(x)`` for integer ``nu >= 0``.

    Small arguments use the power series; larger ones use Miller's backward
    recurrence, since the alternating series cancels catastrophically in
    double precision once ``x`` is more than a few units.

    Raises
    ------
    DomainError
        If any ``x < 0`` or ``nu`` is not a non-negative integer.
    """
    nu = _check_order(nu)
    arr, scalar = _as_float_array(x)
    if np.any(arr < 0) or np.any(~np.isfinite(arr)):
        raise DomainError("bessel_J requires finite x >= 0")
    flat = arr.reshape(-1)
    out = np.empty_like(flat)
    small = flat <= _J_SERIES_MAX_X
    if small.any():
        out[small] = _bessel_series(nu, flat[small], -1.0)
    if (~small).any():
        out[~small] = _bessel_j_miller(nu, flat[~small])
    return _out(out.reshape(arr.shape), scalar)


def bessel_I(nu, x):
    """Modified Bessel function ``I_nu(x)`` for integer ``nu >= 0``, ``x >= 0``.

    The power series has positive terms, so it is accurate for every
    argument whose exponential is representable.
    """
    nu = _check_order(nu)
    arr, scalar = _as_float_array(x)
    if np.any(arr < 0) or np.any(~np.isfinite(arr)):
        raise DomainError("bessel_I requires finite x >= 0")
    if arr.size and arr.max() > _EXP_MAX - 10:
        raise NumericOverflowError(f"bessel_I argument {arr.max():g} overflows float64")
    flat = arr.reshape(-1)
    out = _bessel_series(nu, flat, 1.0) if flat.size else flat.copy()
    return _out(out.reshape(arr.shape), scalar)


def _check_gamma_args(s, y):
    if int(s) != s or s < 1:
        raise DomainError(f"incomplete gamma parameter must be a positive integer, got {s!r}")
    arr, scalar = _as_float_array(y)
    if np.any(~np.isfinite(arr)):
        raise DomainError("incomplete gamma argument must be finite")
    if arr.size and -arr.min() > _EXP_MAX:
        raise NumericOverflowError("exp(-y) overflows for y = %g" % arr.min())
    return int(s), arr, scalar


def _exp_poly(s, y):
    """exp(-y) * sum_{j<s} y^j / j!  (Horner)."""
    acc = np.ones_like(y)
    for j in range(s - 1, 0, -1):
        acc = 1.0 + acc * y / j
    return np.exp(-y) * acc


def gamma_star(s, y):
    """Normalized upper incomplete gamma ``Gamma(s, y) / Gamma(s)``.

    Uses the finite closed form for integer ``s``, valid for all real ``y``.
    """
    s, arr, scalar = _check_gamma_args(s, y)
    return _out(_exp_poly(s, arr), scalar)


def incomplete_gamma(s, y):
    """Upper incomplete gamma ``Gamma(s, y) = (s-1)! e^{-y} sum_{j<s} y^j/j!``."""
    s, arr, scalar = _check_gamma_args(s, y)
    return _out(math.factorial(s - 1) * _exp_poly(s, arr), scalar)


def gamma_star_lower(s, y):
    """Complement ``1 - Gamma(s, y)/Gamma(s)`` without cancellation for small ``y > 0``."""
    s, arr, scalar = _check_gamma_args(s, y)
    shape = arr.shape
    arr = arr.reshape(-1)
    out = 1.0 - _exp_poly(s, arr)
    small = (arr > 0) & (arr < s + 1)
    if small.any():
        ys = arr[small]
        term = ys**s / math.factorial(s)
        total = term.copy()
        for j in range(s + 1, s + _SERIES_CAP):
            term = term * ys / j
            total = total + term
            if np.all(term <= _SERIES_TOL * total):
                break
        out[small] = np.exp(-ys) * total
    return _out(out.reshape(shape), scalar)


@lru_cache(maxsize=None)
def eulerian_numbers(p):
    """Row ``p`` of the Eulerian triangle as a tuple ``(A(p,0), ..., A(p,p-1))``.

    Built with ``A(n,i) = (i+1) A(n-1,i) + (n-i) A(n-1,i-1)``; row 0 is ``(1,)``.
    """
    if p < 0:
        raise DomainError("Eulerian row index must be non-negative")
    row = [1]
    for n in range(1, p + 1):
        prev = row + [0]
        row = [(i + 1) * prev[i] + (n - i) * (prev[i - 1] if i else 0) for i in range(n)]
    return tuple(row)


def _polyval(coeffs, z):
    acc = np.zeros_like(z)
    for a in reversed(coeffs):
        acc = acc * z + a
    return acc


def polylog_neg(p, w):
    """Polylogarithm ``Li_{-p}(w) = sum_{n>=1} n^p w^n`` continued to ``w != 1``.

    For ``p >= 1`` this is ``w A_p(w) / (1-w)^(p+1)`` with ``A_p`` the Eulerian
    polynomial; for ``p = 0`` it is ``w / (1-w)``.  When ``|w| > 1`` the same
    rational function is evaluated with numerator and denominator divided by
    ``w^(p+1)`` so nothing overflows.

    Raises
    ------
    PoleError
        If any ``w == 1``.  Emits :class:`PrecisionWarning` if ``|w-1| < 1e-8``.
    """
    if int(p) != p or p < 0:
        raise DomainError(f"polylog order -p needs integer p >= 0, got {p!r}")
    p = int(p)
    arr = np.asarray(w, dtype=complex)
    scalar = arr.ndim == 0
    dist = np.abs(arr - 1.0)
    if np.any(dist == 0):
        raise PoleError("Li_{-p}(w) has a pole at w = 1")
    if np.any(dist < 1e-8):
        warnings.warn("polylog_neg evaluated within 1e-8 of its pole", PrecisionWarning, stacklevel=2)
    coeffs = eulerian_numbers(p) if p else (1,)
    out = np.empty_like(arr)
    inner = np.abs(arr) <= 1.0
    if inner.any():
        z = arr[inner]
        out[inner] = z * _polyval(coeffs, z) / (1.0 - z) ** (p + 1)
    if (~inner).any():
        u = 1.0 / arr[~inner]
        # w * A(w) / (1-w)^(p+1) with w = 1/u, times u^(p+1)/u^(p+1)
        if p:
            out[~inner] = u * _polyval(tuple(reversed(coeffs)), u) / (u - 1.0) ** (p + 1)
        else:
            out[~inner] = 1.0 / (u - 1.0)
    return _out(out, scalar)
