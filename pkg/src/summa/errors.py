"""Exception types raised across the package."""


class SummaError(Exception):
    """Base class for all errors raised by summa."""


class DomainError(SummaError, ValueError):
    """An argument lies outside the domain of a function."""


class SpecError(SummaError, ValueError):
    """A kernel, index-set or theta description is inconsistent."""


class ResolutionError(SummaError, ValueError):
    """The grid is too coarse for the requested computation."""


class TruncationError(SummaError, RuntimeError):
    """An infinite sum or integral could not be truncated to tolerance."""


class CollisionError(SummaError, ValueError):
    """Divided-difference nodes are too close together."""


class ConvergenceError(SummaError, RuntimeError):
    """A series or quadrature failed to converge."""


class GuardError(SummaError, OverflowError):
    """An argument exceeds the range the implementation is built for."""
