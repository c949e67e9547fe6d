"""CGC Elliptic - Jacobi elliptic functions and elliptic integrals with their transformation formulas."""

from .errors import (
    CharacteristicError,
    DivergenceError,
    EllipticDomainError,
    EllipticError,
    PoleError,
    TransformError,
)
from .integrals import (
    complete_E,
    complete_F,
    complete_Pi,
    incomplete_E,
    incomplete_F,
    incomplete_Pi,
    integral_sn2,
)
from .jacobi import (
    RATIO_NAMES,
    ImaginaryValue,
    JacobiEval,
    jacobi,
    jacobi_general,
    jacobi_imaginary_argument,
    quarter_period,
)
from .modulus import Modulus, ModulusRegime, as_modulus
from .transforms import (
    pi_imaginary_argument,
    pi_imaginary_modulus,
    pi_reciprocal_modulus,
    pi_transforms,
)

__all__ = [
    "CharacteristicError",
    "DivergenceError",
    "EllipticDomainError",
    "EllipticError",
    "PoleError",
    "TransformError",
    "complete_E",
    "complete_F",
    "complete_Pi",
    "incomplete_E",
    "incomplete_F",
    "incomplete_Pi",
    "integral_sn2",
    "RATIO_NAMES",
    "ImaginaryValue",
    "JacobiEval",
    "jacobi",
    "jacobi_general",
    "jacobi_imaginary_argument",
    "quarter_period",
    "Modulus",
    "ModulusRegime",
    "as_modulus",
    "pi_imaginary_argument",
    "pi_imaginary_modulus",
    "pi_reciprocal_modulus",
    "pi_transforms",
]
