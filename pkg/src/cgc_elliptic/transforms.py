"""Transformation formulas for Π: reciprocal modulus, imaginary argument, imaginary modulus."""

import logging
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from .errors import EllipticDomainError, TransformError
from .integrals import incomplete_E, incomplete_Pi
from .jacobi import ImaginaryValue, as_argument, scalar_or_array
from .modulus import Modulus, ModulusRegime, as_modulus

logger = logging.getLogger(__name__)

UNIT_BRANCH = "unit"
GENERAL_BRANCH = "general"


def pi_reciprocal_modulus(k: float, m: Modulus, a: float, s: ArrayLike):
    """Π(k; 1/p | a·s) = p·Π(k·p²; p | a·s/p) for a raw modulus 1/p > 1."""
    if m.regime is not ModulusRegime.RECIPROCAL:
        raise TransformError(f"Reciprocal-modulus formula needs p > 1, got {m}")
    p = m.transformed().p
    y = a * as_argument(s)
    return scalar_or_array(p * np.asarray(incomplete_Pi(k * p * p, p, y / p)))


def pi_imaginary_argument(
    k: float, m: Union[Modulus, float], a: float, s: ArrayLike, branch: Optional[str] = None
) -> ImaginaryValue:
    """
    Π(k;p|i·a·s), always purely imaginary.

    k != 1: i·[y/(1-k) - (k/(1-k))·Π(1-k; q | y)]
    k == 1: i·(E(y|q) - p²·y)/q², the integral of cn_q²
    with y = a·s.
    """
    m = as_modulus(m)
    m.require_standard()
    expected = UNIT_BRANCH if k == 1.0 else GENERAL_BRANCH
    if branch is not None and branch != expected:
        raise TransformError(f"Imaginary-argument Π with k={k!r} uses the {expected!r} branch, not {branch!r}")
    y = a * as_argument(s)
    comp = m.complement()
    if expected == UNIT_BRANCH:
        if comp.p == 0.0:
            value = y / 2.0 + np.sin(2.0 * y) / 4.0
        else:
            value = (np.asarray(incomplete_E(y, comp)) - m.m * y) / comp.m
    else:
        value = y / (1.0 - k) - k / (1.0 - k) * np.asarray(incomplete_Pi(1.0 - k, comp, y))
    return ImaginaryValue(value=scalar_or_array(value), imaginary=True)


def pi_imaginary_modulus(k: float, m: Modulus, a: float, s: ArrayLike):
    """
    Π(k; ip | y) = (p'²/k')·y + (k·q'³/k')·Π(k'; p' | y/q'),
    p' = p/sqrt(1+p²), q' = 1/sqrt(1+p²), k' = p'² + k·q'².
    """
    if m.regime is not ModulusRegime.IMAGINARY:
        raise TransformError(f"Imaginary-modulus formula needs an imaginary p, got {m}")
    base = m.transformed()
    p2, q = base.m, base.q
    k_prime = p2 + k * q * q
    y = a * as_argument(s)
    if abs(k_prime) < 1e-15:
        # integrand reduces to dn_{p'}²
        return scalar_or_array(q * np.asarray(incomplete_E(y / q, base)))
    return scalar_or_array(p2 / k_prime * y + k * q ** 3 / k_prime * np.asarray(incomplete_Pi(k_prime, base, y / q)))


def pi_transforms(
    k: float,
    p_raw: Union[float, complex, Modulus],
    a: float,
    s: ArrayLike,
    imaginary_argument: bool = False,
    branch: Optional[str] = None,
):
    """
    Evaluate Π(k; p_raw | a·s) (or Π(k; p | i·a·s)) by routing to the matching identity.

    Real results come back as floats/arrays; the imaginary-argument case returns an
    ImaginaryValue.
    """
    if a == 0:
        raise EllipticDomainError("Π transformation needs a != 0")
    m = as_modulus(p_raw)
    if imaginary_argument:
        return pi_imaginary_argument(k, m, a, s, branch=branch)
    if branch is not None:
        raise TransformError(f"Branch {branch!r} only applies to the imaginary-argument formula")
    if m.regime is ModulusRegime.RECIPROCAL:
        logger.debug("Π via reciprocal modulus: k=%r %s", k, m)
        return pi_reciprocal_modulus(k, m, a, s)
    if m.regime is ModulusRegime.IMAGINARY:
        logger.debug("Π via imaginary modulus: k=%r %s", k, m)
        return pi_imaginary_modulus(k, m, a, s)
    return incomplete_Pi(k, m, a * as_argument(s))
