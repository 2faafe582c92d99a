"""Exception types raised across the package."""


class UavNomaError(Exception):
    """Base class for all package errors."""


class InvalidGeometry(UavNomaError, ValueError):
    pass


class InvalidParameter(UavNomaError, ValueError):
    pass


class AssumptionViolated(UavNomaError, ValueError):
    """Raised when N <= M, outside the regime the DoF formula covers."""


class InvalidStreamCount(UavNomaError, ValueError):
    pass


class GroupOverlap(UavNomaError, ValueError):
    pass


class EmptyGroup(UavNomaError, ValueError):
    pass


class TooLargeForOracle(UavNomaError, ValueError):
    pass


class SizeSumMismatch(UavNomaError, ValueError):
    pass


class InfeasibleZF(UavNomaError):
    """Counting condition M > N - |group| fails, so no ZF beam exists."""


class RankDeficiency(UavNomaError):
    """Numerical null space does not have the dimension counting predicts."""


class SolverError(UavNomaError):
    pass


class InvalidPower(UavNomaError, ValueError):
    pass


class ConfigError(UavNomaError, ValueError):
    pass


class InterferenceVerificationError(UavNomaError):
    """A solved beamformer leaks interference above the ZF tolerance."""

    def __init__(self, message, report=None, seed=None):
        super().__init__(message)
        self.report = report
        self.seed = seed
