"""Exception types shared across the package."""


class ParameterDomainError(ValueError):
    """A parameter lies outside the domain where the model is defined."""


class AccuracyError(ArithmeticError):
    """Numerical integration did not reach the requested tolerance.

    The best available estimate is kept on ``estimate`` so callers can decide
    whether it is still usable.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class ResourceError(MemoryError):
    """Requested graph would exceed the configured memory budget."""


class PrecisionWarning(RuntimeWarning):
    """A finite-difference step is too small for double precision."""
