"""Exception types raised across the toolkit."""

from __future__ import annotations


class NehariError(Exception):
    """Base class for toolkit errors."""


class SingularJetError(NehariError, ZeroDivisionError):
    """Division by a jet whose value component vanishes."""


class BranchCutError(NehariError, ValueError):
    """A principal-branch function was evaluated on its cut."""

    def __init__(self, fn: str, value):
        self.fn = fn
        self.value = value
        super().__init__(f"{fn}: argument {value!r} lies on the principal branch cut")


class CriticalPointError(NehariError, ValueError):
    """f'(z) vanishes (or is numerically zero) at an evaluation point."""

    def __init__(self, location):
        self.location = location
        super().__init__(f"f' vanishes at z = {location!r}")


class ConvergenceError(NehariError, ArithmeticError):
    """A series did not converge within its term budget."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (residual estimate {residual:.3e})")


class SingularSolutionError(NehariError, ArithmeticError):
    """The hypergeometric denominator of a ratio solution vanishes."""


class SingularIntegrandError(NehariError, ArithmeticError):
    """A quadrature integrand is singular on the integration path."""


class BlowUpError(NehariError, ArithmeticError):
    """An ODE solution exceeded the blow-up threshold."""

    def __init__(self, abscissa: float, threshold: float):
        self.abscissa = abscissa
        self.threshold = threshold
        super().__init__(f"|w| exceeded {threshold:g} near x = {abscissa:.12g}")


class UnknownMapError(NehariError, KeyError):
    """Catalog lookup for a name that does not exist."""


class PreconditionError(NehariError, ValueError):
    """An operation was called on inputs that violate its precondition."""
