"""CGC Profiles - closed-form profile curves of rotational constant Gauss curvature surfaces."""

from .errors import (
    BoundaryCaseError,
    BoundsError,
    ConstraintViolationError,
    DegenerateCaseError,
    DegenerateLimit,
    ProfileError,
    RegimeError,
)
from .ode import OdePath, OdeSystem, integrate_ode
from .profile import (
    CaseId,
    CaseParams,
    ProfileSample,
    PsiReduction,
    C_from_modulus,
    classify,
    default_window,
    flat_front,
    modulus_from_C,
    ode_residual,
    profile,
)
from .space import (
    H3_ELLIPTIC,
    H3_HYPERBOLIC,
    H3_PARABOLIC,
    R3,
    S3,
    Branch,
    Regime,
    Rotation,
    SpaceForm,
    regime_for,
)
from .tables import ParamInterval, Shape, all_rows, c_bounds

__all__ = [
    "BoundaryCaseError",
    "BoundsError",
    "ConstraintViolationError",
    "DegenerateCaseError",
    "DegenerateLimit",
    "ProfileError",
    "RegimeError",
    "OdePath",
    "OdeSystem",
    "integrate_ode",
    "CaseId",
    "CaseParams",
    "ProfileSample",
    "PsiReduction",
    "C_from_modulus",
    "classify",
    "default_window",
    "flat_front",
    "modulus_from_C",
    "ode_residual",
    "profile",
    "H3_ELLIPTIC",
    "H3_HYPERBOLIC",
    "H3_PARABOLIC",
    "R3",
    "S3",
    "Branch",
    "Regime",
    "Rotation",
    "SpaceForm",
    "regime_for",
    "ParamInterval",
    "Shape",
    "all_rows",
    "c_bounds",
]
