"""Exception types shared across the package."""


class SteadyThermError(Exception):
    """Base class for all errors raised by this package."""


class NotSquare(SteadyThermError):
    """A matrix that must be square is not."""


class NotHermitian(SteadyThermError):
    """Asymmetry of a nominally Hermitian matrix exceeds tolerance."""


class NegativeEigenvalue(SteadyThermError):
    """An eigenvalue sits below the PSD clip threshold; the matrix upstream
    is not a valid density matrix."""


class SingularMatrix(SteadyThermError):
    """Direct factorization hit a zero or tiny pivot, or the solution failed
    its residual check."""


class DimensionMismatch(SteadyThermError):
    """Operands have incompatible dimensions."""


class InvalidParams(SteadyThermError):
    """Model or operation parameters violate their constraints."""


class InvalidState(SteadyThermError):
    """A matrix is not a valid density matrix (trace, Hermiticity, or
    positivity out of tolerance)."""


class NonUniqueSteadyState(SteadyThermError):
    """The generator has more than one stationary state; no state is
    returned rather than picking one arbitrarily."""


class NotConverged(SteadyThermError):
    """Time propagation hit its time cap while the derivative was still
    large. The partial state is available as ``.state``."""

    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class NonpositiveFrequency(SteadyThermError):
    """A transition frequency that must be positive is not."""


class AllRatesZero(SteadyThermError):
    """Every dissipation rate vanishes, so no steady-state ratio exists."""


class ConfigError(SteadyThermError):
    """A config file line could not be parsed; the message carries the
    file name and line number."""
