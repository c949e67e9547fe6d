"""Space forms, rotation types, curvature regimes and branch tags."""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import RegimeError


# =============================================================================
# ENUMS
# =============================================================================

class Rotation(Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"


class Regime(Enum):
    K_BELOW_MINUS_ONE = "K<-1"
    K_MINUS_ONE = "K=-1"
    K_MINUS_ONE_TO_ZERO = "-1<K<0"
    K_NEGATIVE = "K<0"
    K_POSITIVE = "K>0"
    K_ZERO_TO_ONE = "0<K<1"
    K_ONE = "K=1"
    K_ABOVE_ONE = "K>1"


class Branch(Enum):
    CN = "cn"
    DN = "dn"
    CD1 = "cd1"
    CD2 = "cd2"
    SC1 = "sc1"
    SC2 = "sc2"
    NC1 = "nc1"
    NC2 = "nc2"
    DC1 = "dc1"
    DC2 = "dc2"
    TRIG = "trig"
    CLIFFORD = "clifford"
    SNOWMAN = "snowman"
    HOURGLASS = "hourglass"
    PEACH = "peach"
    COSH = "cosh"


# =============================================================================
# SPACE FORMS
# =============================================================================

# (kappa, rotation) -> (kappa1, kappa2); parabolic and Euclidean rotations are isotropic
_PLANE_SIGNS: dict[tuple[int, Rotation], tuple[int, int]] = {
    (1, Rotation.ELLIPTIC): (1, 1),
    (-1, Rotation.ELLIPTIC): (1, -1),
    (-1, Rotation.HYPERBOLIC): (-1, 1),
    (0, Rotation.ELLIPTIC): (1, 1),
}

_NAMES = {1: "s3", -1: "h3", 0: "r3"}


@dataclass(frozen=True)
class SpaceForm:
    """Space form of sectional curvature κ together with the type of rotation."""

    kappa: int
    rotation: Rotation = Rotation.ELLIPTIC

    def __post_init__(self):
        if self.kappa not in (-1, 0, 1):
            raise RegimeError(f"kappa must be -1, 0 or 1, got {self.kappa}")
        if self.rotation is Rotation.HYPERBOLIC and self.kappa != -1:
            raise RegimeError("Hyperbolic rotations only exist in H³")
        if self.rotation is Rotation.PARABOLIC and self.kappa != -1:
            raise RegimeError("Parabolic rotations only exist in H³")

    @classmethod
    def from_tag(cls, space: str, rotation: str = "elliptic") -> "SpaceForm":
        kappa = {name: k for k, name in _NAMES.items()}.get(space.lower())
        if kappa is None:
            raise RegimeError(f"Unknown space {space!r}. Valid spaces: {sorted(_NAMES.values())}")
        try:
            rot = Rotation(rotation.lower())
        except ValueError:
            raise RegimeError(f"Unknown rotation {rotation!r}. Valid rotations: {[r.value for r in Rotation]}")
        return cls(kappa, rot)

    @property
    def name(self) -> str:
        return _NAMES[self.kappa]

    @property
    def isotropic(self) -> bool:
        """No Moutard-lift polar form with R = 1/(κr): parabolic rotation or Euclidean space."""
        return self.rotation is Rotation.PARABOLIC or self.kappa == 0

    @property
    def kappa1(self) -> Optional[int]:
        signs = _PLANE_SIGNS.get((self.kappa, self.rotation))
        return signs[0] if signs else None

    @property
    def kappa2(self) -> Optional[int]:
        signs = _PLANE_SIGNS.get((self.kappa, self.rotation))
        return signs[1] if signs else None

    def __str__(self) -> str:
        return f"{self.name}/{self.rotation.value}"


S3 = SpaceForm(1, Rotation.ELLIPTIC)
H3_ELLIPTIC = SpaceForm(-1, Rotation.ELLIPTIC)
H3_HYPERBOLIC = SpaceForm(-1, Rotation.HYPERBOLIC)
H3_PARABOLIC = SpaceForm(-1, Rotation.PARABOLIC)
R3 = SpaceForm(0, Rotation.ELLIPTIC)


def regime_for(space: SpaceForm, K: float) -> Regime:
    """Table row block containing K, following the sign tests on K, K + κ and K - 1."""
    if K == 0:
        raise RegimeError("K = 0 is excluded: the boundary case yields tubular surfaces")
    if space.kappa == 1:
        if K > 0:
            return Regime.K_POSITIVE
        if K < -1:
            return Regime.K_BELOW_MINUS_ONE
        if K == -1:
            return Regime.K_MINUS_ONE
        return Regime.K_MINUS_ONE_TO_ZERO
    if K < 0:
        return Regime.K_NEGATIVE
    if K < 1:
        return Regime.K_ZERO_TO_ONE
    if K == 1:
        return Regime.K_ONE
    return Regime.K_ABOVE_ONE
