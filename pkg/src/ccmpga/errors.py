"""Exception hierarchy shared by all modules."""


class InvalidArgumentError(ValueError):
    """Malformed input: wrong shapes, mismatched models, out-of-range parameters."""


class DomainError(ValueError):
    """Input lies outside the region where a closed-form map is defined."""


class NumericalFailure(ArithmeticError):
    """A numerical routine produced an unusable result.

    ``details`` carries whatever diagnostics the raising routine had at hand
    (coefficients, residuals, last iterate).
    """

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class ConvergenceError(NumericalFailure):
    """An iterative routine hit its iteration cap.

    The last iterate is available as ``self.last``.
    """

    def __init__(self, message, last=None, **details):
        super().__init__(message, **details)
        self.last = last


class ConvexityWarning(UserWarning):
    """Data extends beyond the convexity radius where means are unique."""
