"""Exception types raised by the period solvers."""


class OscPeriodError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(OscPeriodError, ValueError):
    """An argument lies outside the domain where the method is defined."""


class CapacityError(OscPeriodError, ValueError):
    """A requested order exceeds an internal size limit."""


class NoRootError(OscPeriodError):
    """No sign change of the quarter-period residual was found.

    Attributes:
        scanned: (lowest, highest) trial frequency examined.
    """

    def __init__(self, message: str, scanned: tuple[float, float]):
        super().__init__(message)
        self.scanned = scanned


class NumericError(OscPeriodError, ArithmeticError):
    """A non-finite value appeared during evaluation."""


class BranchError(OscPeriodError):
    """Continuation lost the physical root of a period polynomial."""


class ConvergenceError(OscPeriodError):
    """An iterative procedure did not reach its tolerance."""
