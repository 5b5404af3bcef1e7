"""Exception types shared across the package."""


class SnodError(Exception):
    """Base class for all package-specific errors."""


class AllCoefficientsZero(SnodError):
    """Cubic solver was handed the identically-zero polynomial."""


class NotAFixedPoint(SnodError):
    """A point claimed to be an equilibrium does not satisfy the fixed-point residual."""


class RegimeMismatch(SnodError):
    """An operation requiring the spiking-capable regime was called outside it."""

    def __init__(self, regime, message=""):
        self.regime = regime
        super().__init__(message or f"operation requires the Hopf-window regime, got {regime}")


class StepSizeUnderflow(SnodError):
    """The adaptive integrator failed to make progress."""


class TooShort(SnodError):
    """Trajectory does not span the requested transient horizon."""


class DomainError(SnodError, ValueError):
    """Argument outside the mathematical domain of the operation."""


class NoFold(SnodError):
    """The opinion nullcline is monotone: no fold points exist at these parameters."""


class QuadratureDivergence(SnodError):
    """Slow-branch integrand is singular (branch touches the recovery nullcline)."""
