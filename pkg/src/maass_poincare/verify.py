"""Numerical checks of the identities satisfied by the series in this package.

Every ``check_*`` function returns a :class:`VerificationReport`; failures are
report contents, never exceptions.  Unless stated otherwise ``rel_err`` is
``|lhs - rhs| / (1 + |rhs|)``.
"""

import json
import math
import time
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from importlib import resources

import numpy as np

from . import coeffs, continuation, forms, numerics
from .arith import S_MATRIX, T_MATRIX, CosetRep
from .coeffs import Truncation

SCHEMA_VERSION = 1

H_TRUNCATION = Truncation(c_max=30)
REFERENCE_TRUNCATION = Truncation(c_max=300, n_max=40)


@dataclass
class Residual:
    point: object
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float


@dataclass
class VerificationReport:
    """Outcome of one check: ``passed`` iff every ``rel_err <= tolerance``."""

    check_name: str
    params: dict
    residuals: list = field(default_factory=list)
    passed: bool = False
    tolerance: float = 0.0
    runtime_ms: int = 0
    notes: str = ""

    @property
    def max_rel_err(self):
        return max((r.rel_err for r in self.residuals), default=0.0)

    def to_dict(self):
        return _jsonable(asdict(self))

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.check_name}: max rel err {self.max_rel_err:.3e} (tol {self.tolerance:.1e})"


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def _trunc_params(trunc):
    return {k: v for k, v in asdict(trunc).items()}


def _residual(point, lhs, rhs, scale=None):
    diff = abs(lhs - rhs)
    scale = 1.0 + abs(rhs) if scale is None else scale
    rel = diff / scale if scale else (0.0 if diff == 0 else math.inf)
    return Residual(point, lhs, rhs, float(diff), float(rel))


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int(round(1000 * (time.perf_counter() - self.start)))


def _finish(name, params, residuals, tol, timer, notes=""):
    passed = all(r.rel_err <= tol for r in residuals)
    return VerificationReport(name, params, residuals, passed, tol, timer.ms, notes)


def _points(points):
    return [forms.as_point(p) for p in points]


@lru_cache(maxsize=1)
def sample_points():
    """Versioned manifest of the evaluation points used by the standard suites."""
    text = resources.files("maass_poincare").joinpath("data/sample_points.json").read_text()
    data = json.loads(text)
    out = {"version": data["version"]}
    for name, pts in data["points"].items():
        out[name] = [complex(u, v) for u, v in pts]
    return out


@lru_cache(maxsize=1)
def coverage_manifest():
    """Each identity exercised by the harness and the check/test that covers it."""
    text = resources.files("maass_poincare").joinpath("data/coverage.json").read_text()
    return json.loads(text)


def check_theorem1_upper(k, m, N, points, trunc=H_TRUNCATION, tol=1e-4, reference_trunc=REFERENCE_TRUNCATION):
    """``H_{k,m}(tau)`` against the Fourier expansion of ``F_{k,-m}(tau)`` for ``tau`` above the real line."""
    params = {"k": k, "m": m, "N": N, "trunc": _trunc_params(trunc), "reference_trunc": _trunc_params(reference_trunc)}
    with _Timer() as timer:
        exp = coeffs.maass_expansion(k, m, N, reference_trunc.n_max, reference_trunc)
        residuals = []
        for p in _points(points):
            residuals.append(_residual(p.tau, continuation.H(k, m, N, p, trunc), forms.eval_maass(exp, p)))
    return _finish("theorem1-upper", params, residuals, tol, timer)


def check_theorem1_lower(k, m, N, points, trunc=H_TRUNCATION, tol=1e-4, reference_trunc=REFERENCE_TRUNCATION):
    """``H_{k,m}(tau)`` against the Eichler-integral combination for ``tau`` below the real line."""
    params = {"k": k, "m": m, "N": N, "trunc": _trunc_params(trunc), "reference_trunc": _trunc_params(reference_trunc)}
    with _Timer() as timer:
        residuals = []
        for p in _points(points):
            rhs = forms.theorem_rhs_lower(k, m, N, p, reference_trunc.n_max, reference_trunc)
            residuals.append(_residual(p.tau, continuation.H(k, m, N, p, trunc), rhs))
    return _finish("theorem1-lower", params, residuals, tol, timer)


def check_branches_distinct(k, m, N, points, trunc=REFERENCE_TRUNCATION, min_rel_diff=1e-2):
    """Guard against evaluating one expression twice: ``F(conj tau)`` must differ from the lower-plane value at ``tau``.

    Here a residual *passes* when its relative difference is at least
    ``min_rel_diff``; ``rel_err`` stores the reciprocal so that the usual
    ``rel_err <= tolerance`` rule applies with ``tolerance = 1/min_rel_diff``.
    """
    params = {"k": k, "m": m, "N": N, "trunc": _trunc_params(trunc), "min_rel_diff": min_rel_diff}
    with _Timer() as timer:
        exp = coeffs.maass_expansion(k, m, N, trunc.n_max, trunc)
        residuals = []
        for p in _points(points):
            lower = forms.theorem_rhs_lower(k, m, N, p, trunc.n_max, trunc)
            upper = forms.eval_maass(exp, p.conjugate())
            r = _residual(p.tau, upper, lower)
            r.rel_err = 1.0 / r.rel_err if r.rel_err else math.inf
            residuals.append(r)
    return _finish("branches-distinct", params, residuals, 1.0 / min_rel_diff, timer)


def check_modularity(k, m, N, gamma, points, trunc=REFERENCE_TRUNCATION, tol=1e-4):
    """Residual ``|F(gamma tau) - (c tau + d)^k F(tau)| / (1 + |F(tau)|)``."""
    if not isinstance(gamma, CosetRep):
        gamma = CosetRep(*gamma)
    params = {"k": k, "m": m, "N": N, "gamma": [gamma.a, gamma.b, gamma.c, gamma.d], "trunc": _trunc_params(trunc)}
    with _Timer() as timer:
        if gamma.c % N:
            raise ValueError(f"{gamma} is not in Gamma_0({N})")
        exp = coeffs.maass_expansion(k, m, N, trunc.n_max, trunc)
        residuals = []
        for p in _points(points):
            f = forms.eval_maass(exp, p)
            lhs = forms.eval_maass(exp, gamma.act(p.tau))
            residuals.append(_residual(p.tau, lhs, gamma.automorphy(p.tau) ** k * f, 1.0 + abs(f)))
    return _finish("modularity", params, residuals, tol, timer)


def check_fixed_point(k, m, N=1, trunc=REFERENCE_TRUNCATION, tol=1e-4):
    """For ``k = 2 mod 4`` modularity under ``S`` at ``tau = i`` forces ``F(i) = 0``; ``rel_err`` is ``|F(i)|``."""
    params = {"k": k, "m": m, "N": N, "trunc": _trunc_params(trunc)}
    with _Timer() as timer:
        exp = coeffs.maass_expansion(k, m, N, trunc.n_max, trunc)
        value = forms.eval_maass(exp, 1j)
        residuals = [_residual(1j, value, 0.0, 1.0)]
    return _finish("fixed-point", params, residuals, tol, timer)


def _coefficient_scale(*parts):
    return sum(abs(p) for p in parts) or 0.0


def check_bol_identity(k, m, N, n_range, trunc=Truncation(c_max=100), tol=1e-10):
    """``D^(1-k) F_{k,-m} = (-m)^(1-k) P_{2-k,-m}`` coefficient by coefficient.

    ``D = q d/dq`` multiplies ``q^n`` by ``n`` and annihilates the
    non-holomorphic part, so the comparison is ``n^(1-k) a^+(n)`` against
    ``(-m)^(1-k) b_{2-k,-m}(n)``, plus the principal coefficients at ``-m``.
    ``rel_err`` is relative to ``|lhs| + |rhs|``.
    """
    params = {"k": k, "m": m, "N": N, "n_range": list(n_range), "trunc": _trunc_params(trunc)}
    with _Timer() as timer:
        ns = np.array(list(n_range))
        a = coeffs.a_coeffs(k, m, "+", ns, N, trunc)
        b = coeffs.b_coeffs(2 - k, -m, ns, N, trunc)
        factor = float((-m) ** (1 - k))
        residuals = [_residual(-m, factor * 1.0, factor * 1.0, abs(factor))]
        for n, an, bn in zip(ns.tolist(), a, b):
            lhs, rhs = float(n) ** (1 - k) * an, factor * bn
            residuals.append(_residual(n, lhs, rhs, _coefficient_scale(lhs, rhs)))
    return _finish("bol", params, residuals, tol, timer)


def xi_term_constant(k, n):
    """``xi_k`` maps ``Gamma*(1-k, 4 pi n v) q^{-n}`` to this multiple of ``q^n``.

    With ``xi_k = 2 i v^k conj(d/d taubar)``, ``dv/d taubar = i/2`` and
    ``d/dv Gamma(1-k, 4 pi n v) = -(4 pi n)^(1-k) v^(-k) e^{-4 pi n v}``:
    ``xi_k(Gamma(1-k, 4 pi n v) q^{-n}) = -(4 pi n)^(1-k) e^{-4 pi n v} conj(q)^{-n}
    = -(4 pi n)^(1-k) q^n``.  Dividing by ``Gamma(1-k) = (-k)!`` normalizes.
    The principal term ``-Gamma*(1-k, 4 pi m v) q^{-m}`` therefore contributes
    ``+(4 pi m)^(1-k)/(-k)! q^m``.
    """
    return -((4 * math.pi * n) ** (1 - k)) / math.factorial(-k)


def check_xi_identity(k, m, N, n_range, trunc=Truncation(c_max=100), tol=1e-10):
    """``xi_k F_{k,-m} = (4 pi m)^(1-k)/(-k)! P_{2-k,m}`` coefficient by coefficient.

    Using :func:`xi_term_constant`, the ``q^n`` coefficient of the left side is
    ``xi_term_constant(k, n) a^-(n) + delta_{n,m} (4 pi m)^(1-k)/(-k)!``.  After
    dividing both sides by ``(4 pi)^(1-k)/(-k)!`` the check compares
    ``-n^(1-k) a^-(n) + delta_{n,m} m^(1-k)`` with ``m^(1-k) b_{2-k,m}(n)``.
    """
    params = {"k": k, "m": m, "N": N, "n_range": list(n_range), "trunc": _trunc_params(trunc)}
    with _Timer() as timer:
        ns = np.array(list(n_range))
        a = coeffs.a_coeffs(k, m, "-", ns, N, trunc)
        b = coeffs.b_coeffs(2 - k, m, ns, N, trunc)
        unit = (4 * math.pi) ** (1 - k) / math.factorial(-k)
        residuals = []
        for n, an, bn in zip(ns.tolist(), a, b):
            xi_part = xi_term_constant(k, n) * an / unit
            principal = float(m) ** (1 - k) if n == m else 0.0
            lhs, rhs = xi_part + principal, float(m) ** (1 - k) * bn
            residuals.append(_residual(n, lhs, rhs, _coefficient_scale(xi_part, principal, rhs)))
    return _finish("xi", params, residuals, tol, timer)


def laplacian_residual(f, k, tau, h=1e-3):
    """Central-difference ``Delta_k f`` at ``tau`` and the sum of magnitudes of its terms."""
    tau = complex(tau)
    v = tau.imag
    f0 = f(tau)
    fe, fw = f(tau + h), f(tau - h)
    fn, fs = f(tau + 1j * h), f(tau - 1j * h)
    f_uu = (fe - 2 * f0 + fw) / h**2
    f_vv = (fn - 2 * f0 + fs) / h**2
    f_u = (fe - fw) / (2 * h)
    f_v = (fn - fs) / (2 * h)
    value = -(v**2) * (f_uu + f_vv) + 1j * k * v * (f_u + 1j * f_v)
    scale = v**2 * (abs(f_uu) + abs(f_vv)) + abs(k) * v * (abs(f_u) + abs(f_v))
    return value, scale


def check_laplacian(k, m, N, point, h=1e-3, trunc=REFERENCE_TRUNCATION, tol=1e-3, func=None):
    """Finite-difference ``Delta_k`` applied to ``F_{k,-m}`` (or to ``func`` if given).

    ``rel_err`` is ``|Delta_k f|`` divided by the summed magnitudes of the
    terms in ``Delta_k f``, i.e. the scale at which cancellation happens.
    """
    params = {"k": k, "m": m, "N": N, "h": h, "trunc": _trunc_params(trunc), "custom_function": func is not None}
    with _Timer() as timer:
        if func is None:
            exp = coeffs.maass_expansion(k, m, N, trunc.n_max, trunc)

            def func(z):
                return forms.eval_maass(exp, z)

        p = forms.as_point(point)
        value, scale = laplacian_residual(func, k, p.tau, h)
        residuals = [_residual(p.tau, value, 0.0, scale)]
    return _finish("laplacian", params, residuals, tol, timer)


@lru_cache(maxsize=None)
def _delta_series(prec):
    coeffs_ = [0] * (prec + 1)
    coeffs_[1] = 1
    for j in range(1, prec + 1):
        for _ in range(24):
            # multiply by (1 - q^j)
            for n in range(prec, j - 1, -1):
                coeffs_[n] -= coeffs_[n - j]
    return tuple(coeffs_)


def tau_oracle(n):
    """Ramanujan ``tau(n)``, ``1 <= n <= 50``, from ``q prod_{j<=50} (1-q^j)^24`` in exact integers."""
    if not 1 <= n <= 50:
        raise ValueError("tau_oracle covers 1 <= n <= 50")
    return _delta_series(50)[n]


def check_ramanujan_tau(n_range, trunc=REFERENCE_TRUNCATION, tol=1e-3):
    """``b_{12,1}(n) / b_{12,1}(1)`` against ``tau(n)``; ``rel_err`` is the absolute difference."""
    params = {"n_range": list(n_range), "trunc": _trunc_params(trunc)}
    with _Timer() as timer:
        ns = [1] + [n for n in n_range if n != 1]
        b = coeffs.b_coeffs(12, 1, ns, 1, trunc)
        residuals = [_residual(n, bn / b[0], float(tau_oracle(n)), 1.0) for n, bn in zip(ns, b) if n in n_range]
    return _finish("ramanujan-tau", params, residuals, tol, timer)


def check_zero_space(kappas=(4, 6, 8, 10, 14), n_range=(1,), c_max=500, tol=1e-3):
    """``|b_{kappa,1}(n)| <= tol`` for weights with no level-one cusp forms; ``rel_err = |b|``."""
    trunc = Truncation(c_max=c_max)
    params = {"kappas": list(kappas), "n_range": list(n_range), "c_max": c_max}
    with _Timer() as timer:
        residuals = []
        for kappa in kappas:
            b = coeffs.b_coeffs(kappa, 1, list(n_range), 1, trunc)
            residuals.extend(_residual({"kappa": kappa, "n": n}, bn, 0.0, 1.0) for n, bn in zip(n_range, b))
    return _finish("zero-space", params, residuals, tol, timer)


def check_direct_cosets(k, m, N, points, c_max=150, trunc=REFERENCE_TRUNCATION, tol=1e-3):
    """Fourier-expansion value against the raw coset sum; ``rel_err = |diff| / |coset sum|``."""
    params = {"k": k, "m": m, "N": N, "coset_c_max": c_max, "trunc": _trunc_params(trunc)}
    with _Timer() as timer:
        exp = coeffs.maass_expansion(k, m, N, trunc.n_max, trunc)
        residuals = []
        for p in _points(points):
            direct = forms.eval_direct_cosets(k, m, N, p, c_max)
            residuals.append(_residual(p.tau, forms.eval_maass(exp, p), direct, abs(direct)))
    return _finish("cosets", params, residuals, tol, timer)


def check_polylog_functional_equation(orders=(3, 5, 7), n_points=100, seed=0, tol=1e-10):
    """``Li_{-p}(w) = Li_{-p}(1/w)`` for odd ``p`` at random ``w``; ``rel_err`` relative to ``|Li_{-p}(w)|``."""
    rng = np.random.default_rng(seed)
    params = {"orders": list(orders), "n_points": n_points, "seed": seed}
    with _Timer() as timer:
        residuals = []
        for p in orders:
            radius = np.exp(rng.uniform(-2.0, 2.0, n_points))
            angle = rng.uniform(0.05, 2 * math.pi - 0.05, n_points)
            w = radius * np.exp(1j * angle)
            lhs = numerics.polylog_neg(p, w)
            rhs = numerics.polylog_neg(p, 1.0 / w)
            for wi, a, b in zip(w, lhs, rhs):
                residuals.append(_residual({"p": p, "w": complex(wi)}, complex(a), complex(b), abs(a)))
    return _finish("polylog", params, residuals, tol, timer)


def check_gamma_recurrence(s_values=range(1, 9), y_values=(-3.0, -0.5, 0.0, 0.25, 1.0, 4.0, 12.0), tol=1e-14):
    """``Gamma(s+1, y) = s Gamma(s, y) + y^s e^{-y}``; ``rel_err`` relative to the summed magnitudes."""
    params = {"s_values": list(s_values), "y_values": list(y_values)}
    with _Timer() as timer:
        residuals = []
        for s in s_values:
            for y in y_values:
                lhs = numerics.incomplete_gamma(s + 1, y)
                a, b = s * numerics.incomplete_gamma(s, y), y**s * math.exp(-y)
                residuals.append(_residual({"s": s, "y": y}, lhs, a + b, abs(a) + abs(b)))
    return _finish("gamma-recurrence", params, residuals, tol, timer)


def check_alpha_residue(k, m, c, ns=(1, 2, 3), nodes=64, radius=2.0, tol=1e-8):
    """Trapezoid value of ``(1/2 pi i) contour-integral alpha^+(s) e^{ns} ds`` against ``n^((k-1)/2) I_{1-k}(4 pi sqrt(mn)/c)``."""
    params = {"k": k, "m": m, "c": c, "ns": list(ns), "nodes": nodes, "radius": radius}
    with _Timer() as timer:
        spec = continuation.ContourSpec(radius, nodes)
        s = spec.points()
        a = continuation.alpha(continuation.SeriesAlphaParams(m, c, k, "+"), s)
        residuals = []
        for n in ns:
            quad = complex(np.mean(a * np.exp(n * s) * s))
            exact = n ** ((k - 1) / 2) * numerics.bessel_I(1 - k, 4 * math.pi * math.sqrt(m * n) / c)
            residuals.append(_residual(n, quad, exact, abs(exact)))
    return _finish("alpha-residue", params, residuals, tol, timer)


def check_c_doubling(k, m, N, point, c_values=(4, 8, 16, 32), reference_trunc=REFERENCE_TRUNCATION, noise=3.0):
    """Residuals of ``H`` against its reference for successive ``c_max`` values must not grow by more than ``noise``.

    ``rel_err`` of entry ``i`` is ``residual_i / residual_{i-1}``; the check
    passes when every ratio is at most ``noise``.
    """
    p = forms.as_point(point)
    params = {"k": k, "m": m, "N": N, "c_values": list(c_values), "reference_trunc": _trunc_params(reference_trunc)}
    with _Timer() as timer:
        if p.plane == "upper":
            exp = coeffs.maass_expansion(k, m, N, reference_trunc.n_max, reference_trunc)
            target = forms.eval_maass(exp, p)
        else:
            target = forms.theorem_rhs_lower(k, m, N, p, reference_trunc.n_max, reference_trunc)
        errs = [abs(continuation.H(k, m, N, p, Truncation(c_max=c)) - target) / (1 + abs(target)) for c in c_values]
        residuals = [
            Residual({"c_max": c, "residual": e_cur}, e_cur, e_prev, abs(e_cur - e_prev), e_cur / e_prev if e_prev else math.inf)
            for c, e_prev, e_cur in zip(c_values[1:], errs, errs[1:])
        ]
    return _finish("c-doubling", params, residuals, noise, timer)


def check_node_doubling(k, m, N, point, c=1, d=0, nodes=(8, 16, 32, 64), reference_nodes=256, min_contraction=10.0, floor=1e-13):
    """Error of ``phi^+`` against a fine reference must shrink at least ``min_contraction`` per node doubling.

    ``rel_err`` of each entry is ``err_next / err_prev`` scaled so the usual
    tolerance test reads ``rel_err <= 1``; entries whose previous error is
    already below ``floor`` (rounding level) pass automatically.
    """
    p = forms.as_point(point)
    params = {"k": k, "m": m, "c": c, "d": d, "nodes": list(nodes), "reference_nodes": reference_nodes}
    with _Timer() as timer:
        radius = math.pi * abs(p.v)
        ref = continuation.phi_plus(c, d, k, m, p, continuation.ContourSpec(radius, reference_nodes))
        errs = [abs(continuation.phi_plus(c, d, k, m, p, continuation.ContourSpec(radius, n)) - ref) / abs(ref) for n in nodes]
        residuals = []
        for n, e_prev, e_cur in zip(nodes[1:], errs, errs[1:]):
            ratio = 0.0 if e_prev < floor else (e_cur / e_prev) * min_contraction
            residuals.append(Residual({"nodes": n, "error": e_cur}, e_cur, e_prev, abs(e_cur - e_prev), ratio))
    return _finish("node-doubling", params, residuals, 1.0, timer)


SUITES = (
    "theorem1-upper", "theorem1-lower", "branches-distinct", "modularity", "fixed-point",
    "bol", "xi", "laplacian", "ramanujan-tau", "zero-space", "cosets",
    "polylog", "gamma-recurrence", "alpha-residue", "c-doubling", "node-doubling",
)


def run_suite(name, k=-2, m=1, N=1, tol=None, trunc=None):
    """Run one named suite with the manifest's sample points; ``tol``/``trunc`` override defaults."""
    pts = sample_points()
    kw = {} if tol is None else {"tol": tol}
    if name == "theorem1-upper":
        return check_theorem1_upper(k, m, N, pts["upper"], trunc or H_TRUNCATION, **kw)
    if name == "theorem1-lower":
        return check_theorem1_lower(k, m, N, pts["lower"], trunc or H_TRUNCATION, **kw)
    if name == "branches-distinct":
        return check_branches_distinct(k, m, N, pts["lower"], trunc or REFERENCE_TRUNCATION)
    if name == "modularity":
        t = trunc or REFERENCE_TRUNCATION
        reports = [check_modularity(k, m, N, g, pts["modularity"], t, **kw) for g in (T_MATRIX, S_MATRIX)]
        return _merge("modularity", reports)
    if name == "fixed-point":
        return check_fixed_point(k, m, N, trunc or REFERENCE_TRUNCATION, **kw)
    if name == "bol":
        return check_bol_identity(k, m, N, range(1, 7), trunc or Truncation(c_max=100), **kw)
    if name == "xi":
        return check_xi_identity(k, m, N, range(1, 7), trunc or Truncation(c_max=100), **kw)
    if name == "laplacian":
        return check_laplacian(k, m, N, pts["laplacian"][0], 1e-3, trunc or REFERENCE_TRUNCATION, **kw)
    if name == "ramanujan-tau":
        return check_ramanujan_tau([2, 3, 4], trunc or REFERENCE_TRUNCATION, **kw)
    if name == "zero-space":
        return check_zero_space((4, 6, 8, 10, 14), (1,), (trunc.c_max if trunc else 500), **kw)
    if name == "cosets":
        return check_direct_cosets(k, m, N, pts["cosets"], 150, trunc or REFERENCE_TRUNCATION, **kw)
    if name == "polylog":
        return check_polylog_functional_equation(**kw)
    if name == "gamma-recurrence":
        return check_gamma_recurrence(**kw)
    if name == "alpha-residue":
        return check_alpha_residue(k, m, 1, **kw)
    if name == "c-doubling":
        return check_c_doubling(k, m, N, pts["upper"][1])
    if name == "node-doubling":
        return check_node_doubling(k, m, N, pts["upper"][1])
    raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")


def _merge(name, reports):
    merged = VerificationReport(
        name,
        {"parts": [r.params for r in reports]},
        [res for r in reports for res in r.residuals],
        all(r.passed for r in reports),
        max(r.tolerance for r in reports),
        sum(r.runtime_ms for r in reports),
    )
    return merged
