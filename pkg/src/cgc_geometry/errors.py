"""Errors raised while embedding, projecting and offsetting surfaces."""

from typing import Optional


class GeometryError(ValueError):
    """Base class for embedding and projection failures."""


class ProjectionError(GeometryError):
    """Model incompatible with the ambient signature, or the point sits at the projection pole."""


class SingularPointError(GeometryError):
    """
    The immersion is singular at (s, θ): f_s vanishes or f_s and f_θ are
    linearly dependent.

    Fronts have such points along cuspidal edges; callers that sweep a grid
    usually catch this and skip the point.
    """

    def __init__(self, message: str, s: float, theta: float):
        super().__init__(message)
        self.s = s
        self.theta = theta


class ConsistencyError(GeometryError):
    """An embedded point misses its quadric by more than the consistency tolerance."""


class NoClosedCurveError(GeometryError):
    """The period equation has no root for the requested (K, n)."""

    def __init__(self, message: str, p_zero: Optional[float] = None):
        super().__init__(message)
        self.p_zero = p_zero
