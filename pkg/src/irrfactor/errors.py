"""Exception hierarchy shared by every module."""


class IrrFactorError(Exception):
    """Base class for all errors raised by irrfactor."""


class PreconditionError(IrrFactorError, ValueError):
    """A hypothesis of a construction does not hold for the given input."""


class ConvergenceError(IrrFactorError):
    """An iterative method hit its iteration cap."""


class IllPosedError(IrrFactorError):
    """A Sylvester problem whose operator may be singular."""


class NumericalError(IrrFactorError):
    """A dense linear solve failed."""


class IndeterminateError(IrrFactorError):
    """The irreducibility verdict sits inside the tolerance band."""


class SeparationError(IrrFactorError):
    """A scalar search could not reach the required spectral separation."""


class DegenerateError(IrrFactorError):
    """Norm-distinctness could not be achieved by rescaling."""


class ConstructionError(IrrFactorError):
    """A construction finished but its output failed certification."""

    def __init__(self, message, route=None):
        super().__init__(message)
        self.route = route


class SamplingError(IrrFactorError):
    """Random sampling repeatedly failed certification."""
