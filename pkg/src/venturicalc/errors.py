"""Exception types raised by the library."""


class ConfigurationError(ValueError):
    """Unknown model tag, suite name or malformed configuration."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class TruncationError(RuntimeError):
    """A grid or spectral truncation cannot support the requested operation.

    Carries the measured tail bound in .tail when available.
    """

    def __init__(self, message, tail=None):
        super().__init__(message)
        self.tail = tail


class ConvergenceError(RuntimeError):
    """An iterative solver failed to reach its tolerance."""


class IntegrationError(RuntimeError):
    """The ODE integrator failed (step-size underflow near a singularity)."""
