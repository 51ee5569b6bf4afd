"""
Custom exceptions for revolve.
Provides specific error handling for different failure scenarios.
"""

from typing import Sequence, Tuple

class RevolveError(Exception):
    """Base exception for revolve errors."""
    pass

class ConfigurationError(RevolveError):
    """Raised when configuration is invalid or missing."""
    pass

class ValidationError(RevolveError):
    """Raised when input validation fails."""
    pass

class GeometryError(RevolveError):
    """Raised when a curve specification is invalid or leaves the half-plane."""
    pass

class ParameterDomainError(RevolveError):
    """Raised when an argument lies outside the domain of an operation."""
    pass

class DegenerateFrameError(GeometryError):
    """Raised when a curve frame cannot be formed (zero speed, polyline)."""
    pass

class SingularEvaluationError(RevolveError):
    """Raised when a kernel is evaluated at a singular pair of points."""
    pass

class NonDifferentiableError(RevolveError):
    """Raised when a gradient is requested where the energy has no derivative."""

    def __init__(self, message: str, pairs: Sequence[Tuple[int, int]] = ()):
        super().__init__(message)
        self.pairs = list(pairs)

class ExportError(RevolveError):
    """Raised when reading or writing result files fails."""
    pass
