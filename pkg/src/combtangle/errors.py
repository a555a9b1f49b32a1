"""Exception types shared across the package."""


class CombtangleError(Exception):
    """Base class for all package errors."""


class DomainError(CombtangleError, ValueError):
    """Input outside the mathematical domain of an operation."""


class UnsupportedRegimeError(CombtangleError):
    """Operation invoked outside its regime of validity (e.g. above threshold)."""


class NoSteadyStateError(CombtangleError):
    """Drift matrix is not Hurwitz-stable; no stationary covariance exists."""


class DivergenceError(CombtangleError):
    """A numerical trajectory left the finite range.

    Carries the integration time (and trajectory index, for ensembles) at
    which the blow-up was detected.
    """

    def __init__(self, message, time=None, trajectory=None):
        super().__init__(message)
        self.time = time
        self.trajectory = trajectory


class AdiabaticityError(CombtangleError):
    """Readout channel violates the dissipation-dominated validity condition."""


class NumericalError(CombtangleError):
    """A numerical contract (residual or physicality bound) was violated."""


class ScenarioError(CombtangleError, ValueError):
    """Malformed or inconsistent scenario file."""


class ConditioningWarning(UserWarning):
    """Linear solve condition estimate beyond the trust threshold."""
