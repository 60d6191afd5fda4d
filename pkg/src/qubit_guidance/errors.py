"""Exception types shared across the simulator."""


class GuidanceError(Exception):
    """Base class for all simulator errors."""


class ParameterDomainError(GuidanceError, ValueError):
    """A scalar parameter lies outside its admissible domain."""


class StateValidationError(GuidanceError, ValueError):
    """A density matrix violates hermiticity, normalization or positivity."""


class DeadBranchError(GuidanceError, RuntimeError):
    """A conditional branch has (numerically) zero success probability."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


class ConvergenceError(GuidanceError, RuntimeError):
    """Fixed-point iteration failed to converge within the iteration cap."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual
