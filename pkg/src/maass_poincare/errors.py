"""Exception and warning types raised by the numerical routines."""


class MaassPoincareError(Exception):
    """Base class for errors raised by this package."""


class DomainError(MaassPoincareError, ValueError):
    """Argument outside the domain of a function."""


class PoleError(MaassPoincareError, ZeroDivisionError):
    """Evaluation at (or numerically too close to) a pole."""


class NumericOverflowError(MaassPoincareError, OverflowError):
    """An intermediate quantity is not representable in double precision."""


class ConvergenceError(MaassPoincareError, RuntimeError):
    """A series or iteration did not converge within its cap."""


class ConsistencyError(MaassPoincareError, ArithmeticError):
    """An internal consistency check failed (e.g. a sum expected to be real)."""


class PlaneMismatchError(MaassPoincareError, ValueError):
    """A point lies in the wrong half-plane for the requested evaluator."""


class PrecisionWarning(UserWarning):
    """Result is likely to have lost significant precision."""
