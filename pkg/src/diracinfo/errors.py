"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the physical or mathematical domain."""


class DivergentIntegral(ArithmeticError):
    """The requested integral does not converge (non-integrable endpoint)."""


class ToleranceNotMet(ArithmeticError):
    """Adaptive refinement exhausted its subdivision budget.

    Carries the best available estimate so callers can decide whether the
    partial result is still usable.
    """

    def __init__(self, message, value=None, error=None):
        super().__init__(message)
        self.value = value
        self.error = error
