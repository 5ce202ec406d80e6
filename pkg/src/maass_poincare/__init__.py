"""Harmonic Maass-Poincare series, their Fourier coefficients and their
continuation across the real line."""

from .arith import CosetRep, coset_reps, kloosterman, kloosterman_row, mod_inverse
from .coeffs import (
    DEFAULT_TRUNCATION,
    FormParams,
    FourierExpansion,
    Truncation,
    a_coeff,
    a_coeffs,
    a_plus_zero,
    b_coeff,
    b_coeffs,
    holo_expansion,
    maass_expansion,
)
from .continuation import H, H_minus, H_plus, SeriesAlphaParams, alpha, phi_minus, phi_plus
from .errors import (
    ConsistencyError,
    ConvergenceError,
    DomainError,
    MaassPoincareError,
    NumericOverflowError,
    PlaneMismatchError,
    PoleError,
    PrecisionWarning,
)
from .forms import HalfPlanePoint, eichler, eval_maass, nonhol_eichler, theorem_rhs_lower
from .numerics import bessel_I, bessel_J, gamma_star, incomplete_gamma, polylog_neg
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"
