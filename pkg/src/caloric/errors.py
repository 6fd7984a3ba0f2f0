"""Exception types raised by the caloric toolkit."""


class CaloricError(Exception):
    """Base class for numerical failures in this package."""


class ConvergenceError(CaloricError):
    """An iterative method (root finder, Newton, quadrature) did not converge."""


class TruncationError(CaloricError):
    """A truncated series left a tail estimate above the requested tolerance."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class SingularTimeError(CaloricError, ValueError):
    """The requested time sits on a singularity of a closed-form solution."""


class WrongSheetError(CaloricError):
    """A multivalued formula produced a point on the wrong branch."""


class PairingError(CaloricError):
    """Nearest-neighbour matching of trajectories was ambiguous."""


class NoDerivativeError(CaloricError, ValueError):
    """Derivative requested where none exists (degree-0 polynomial)."""


class RamificationError(CaloricError):
    """dF/dz vanishes (numerically) at a tracked zero: a multiple zero is near."""
