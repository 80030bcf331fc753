"""Exception types raised across the package."""


class RootSimError(Exception):
    """Base class for all package errors."""


class NotSkewHermitianError(RootSimError, ValueError):
    pass


class BranchCutError(RootSimError, ValueError):
    """A unitary has an eigenvalue on (or too near) the logarithm branch cut."""


class SizeCapError(RootSimError, ValueError):
    """Requested dimension exceeds a configured cap."""


class GateCapError(RootSimError, ValueError):
    pass


class EstimationError(RootSimError, RuntimeError):
    """An empirical constant could not be estimated from the samples drawn."""
