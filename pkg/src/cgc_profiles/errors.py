"""Errors raised while classifying and evaluating profile curves."""

from enum import Enum


class ProfileError(ValueError):
    """Base class for profile classification and evaluation failures."""


class RegimeError(ProfileError):
    """Unsupported (κ, rotation) pair or excluded curvature (K = 0 gives tubular surfaces)."""


class BoundsError(ProfileError):
    """Parameter outside its admissible interval or C outside the regime bounds."""


class BoundaryCaseError(BoundsError):
    """C sits on a branch boundary where the modulus relation degenerates."""


class ConstraintViolationError(ProfileError):
    """Quadric constraint on d cannot be met (e.g. r² < 1 for hyperbolic rotation)."""


class DegenerateLimit(Enum):
    POINT = "point"
    GEODESIC = "geodesic"
    CLIFFORD_TORUS = "Clifford torus"


class DegenerateCaseError(ProfileError):
    """Row coefficients degenerate at the requested parameter; ``limit`` names the geometric limit."""

    def __init__(self, message: str, limit: DegenerateLimit):
        super().__init__(f"{message} (degenerates to a {limit.value})")
        self.limit = limit
