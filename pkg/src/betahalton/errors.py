"""Exception types shared across the package."""


class BetaHaltonError(Exception):
    """Base class for all library-specific failures."""


class IrregularDigitsError(BetaHaltonError, ValueError):
    """A digit string violates the prefix-sum regularity condition."""


class PrecisionError(BetaHaltonError, ArithmeticError):
    """Interval arithmetic could not reach the requested width within the retry budget."""


class RootFindingError(BetaHaltonError, ArithmeticError):
    """Root isolation or refinement failed (missing bracket, non-convergence, bad residual)."""


class BudgetExceededError(BetaHaltonError):
    """An exact computation was refused because it would exceed the configured work budget."""


class SingularEvaluationError(BetaHaltonError, ValueError):
    """An integrand was evaluated exactly at its singular corner."""
