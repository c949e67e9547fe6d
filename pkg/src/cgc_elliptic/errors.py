"""Errors raised by the elliptic function layer."""


class EllipticError(ValueError):
    """Base class for elliptic function and integral failures."""


class EllipticDomainError(EllipticError):
    """Argument or modulus outside the supported domain."""


class PoleError(EllipticError):
    """
    Evaluation reached a pole of a ratio function or of the Π integrand.

    ``location`` is the first offending argument, ``pole`` the nearest pole
    (or the crossing point of k·sn² = 1 for Π).
    """

    def __init__(self, message: str, location: float, pole: float | None = None):
        super().__init__(message)
        self.location = location
        self.pole = pole


class DivergenceError(EllipticError):
    """Complete integral requested at p = 1."""


class CharacteristicError(EllipticError):
    """Characteristic k outside the range of a complete Π."""


class TransformError(EllipticError):
    """Transformation formula applied outside its branch."""
