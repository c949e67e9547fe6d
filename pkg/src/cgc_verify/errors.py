"""Errors raised by the independent curvature oracles."""


class VerifyError(ValueError):
    """Base class for oracle failures."""


class SingularSpeedError(VerifyError):
    """The Moutard lift has v² = 0 at a sample: the curvature formula is undefined there."""
