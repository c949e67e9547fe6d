"""Elliptic modulus with its transformation regime."""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

from .errors import EllipticDomainError

# |p| and |p - 1| below this snap onto the exact trigonometric/hyperbolic branches
SNAP_TOL = 1e-12


class ModulusRegime(Enum):
    STANDARD = "standard"
    RECIPROCAL = "reciprocal"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class Modulus:
    """
    Elliptic modulus p, stored as a non-negative magnitude.

    The regime records how the raw value has to be reduced before evaluation:
    p in [0,1] is used directly, p > 1 goes through the reciprocal-modulus
    formulas and an imaginary p through the imaginary-modulus formulas.

    Usage:
        m = Modulus.from_raw(0.6)
        m.q                               # 0.8
        Modulus.from_raw(0.6j).regime     # ModulusRegime.IMAGINARY
        Modulus.from_raw(2.0).transformed()  # Modulus(p=0.5)
    """

    p: float
    regime: ModulusRegime = ModulusRegime.STANDARD

    def __post_init__(self):
        if not math.isfinite(self.p) or self.p < 0.0:
            raise EllipticDomainError(f"Modulus magnitude must be finite and >= 0, got {self.p}")
        if self.regime is ModulusRegime.STANDARD and self.p > 1.0:
            raise EllipticDomainError(f"Standard modulus must lie in [0,1], got {self.p}")
        if self.regime is ModulusRegime.RECIPROCAL and self.p <= 1.0:
            raise EllipticDomainError(f"Reciprocal regime needs p > 1, got {self.p}")

    @classmethod
    def from_raw(cls, raw: Union[float, complex, "Modulus"]) -> "Modulus":
        """Build a modulus from a real or purely imaginary value (sign of p is irrelevant)."""
        if isinstance(raw, Modulus):
            return raw
        if isinstance(raw, complex):
            if raw.imag != 0.0 and raw.real != 0.0:
                raise EllipticDomainError(f"Modulus must be real or purely imaginary, got {raw}")
            if raw.imag != 0.0:
                magnitude = abs(raw.imag)
                if magnitude < SNAP_TOL:
                    return cls(0.0)
                return cls(magnitude, ModulusRegime.IMAGINARY)
            raw = raw.real
        p = abs(float(raw))
        if not math.isfinite(p):
            raise EllipticDomainError(f"Modulus must be finite, got {raw}")
        if p < SNAP_TOL:
            return cls(0.0)
        if abs(p - 1.0) < SNAP_TOL:
            return cls(1.0)
        if p > 1.0:
            return cls(p, ModulusRegime.RECIPROCAL)
        return cls(p)

    @property
    def m(self) -> float:
        """Parameter p² as used by scipy.special."""
        return self.p * self.p

    @property
    def q(self) -> float:
        """Complementary modulus sqrt(1 - p²)."""
        self.require_standard()
        return math.sqrt((1.0 - self.p) * (1.0 + self.p))

    @property
    def is_trigonometric(self) -> bool:
        return self.regime is ModulusRegime.STANDARD and self.p == 0.0

    @property
    def is_hyperbolic(self) -> bool:
        return self.regime is ModulusRegime.STANDARD and self.p == 1.0

    @property
    def imaginary_scale(self) -> float:
        """sqrt(1 + p²), the argument scale of the imaginary-modulus formulas."""
        return math.sqrt(1.0 + self.p * self.p)

    def require_standard(self):
        if self.regime is not ModulusRegime.STANDARD:
            raise EllipticDomainError(f"Operation needs p in [0,1], got {self}")

    def complement(self) -> "Modulus":
        return Modulus.from_raw(self.q)

    def transformed(self) -> "Modulus":
        """Standard modulus the regime reduces to: 1/p (reciprocal) or p/sqrt(1+p²) (imaginary)."""
        if self.regime is ModulusRegime.RECIPROCAL:
            return Modulus.from_raw(1.0 / self.p)
        if self.regime is ModulusRegime.IMAGINARY:
            return Modulus.from_raw(self.p / self.imaginary_scale)
        return self

    def __str__(self) -> str:
        if self.regime is ModulusRegime.IMAGINARY:
            return f"p={self.p!r}i"
        return f"p={self.p!r}"


def as_modulus(value: Union[float, complex, Modulus]) -> Modulus:
    return Modulus.from_raw(value)
