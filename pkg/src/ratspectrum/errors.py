"""Exception hierarchy shared by every module."""


class RatSpectrumError(Exception):
    """Base class for all library errors."""


class GuardError(RatSpectrumError):
    """A characteristic or degree guard of a criterion is violated."""


class PreconditionError(RatSpectrumError, ValueError):
    """Inputs violate a documented precondition (shape, coprimality, ...)."""


class DegeneratePencilError(PreconditionError):
    """The pencil has no nonconstant member to test."""


class InfiniteSpectrumError(RatSpectrumError):
    """An operation needs a finite spectrum but Spect vanishes identically."""


class ImplementationError(RatSpectrumError, AssertionError):
    """A mandated identity failed; this refutes the code, not the mathematics."""
