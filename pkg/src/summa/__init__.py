"""Fourier summability on the torus: kernels, means, maximal operators and norms."""
from .errors import (CollisionError, ConvergenceError, DomainError, GuardError, ResolutionError,
                     SpecError, SummaError, TruncationError)
from .kernels import KernelSpec

__version__ = "0.1.0"

__all__ = [
    "KernelSpec", "SummaError", "DomainError", "SpecError", "ResolutionError", "TruncationError",
    "CollisionError", "ConvergenceError", "GuardError", "__version__",
]
