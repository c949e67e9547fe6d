"""Complete and incomplete elliptic integrals F, E and Π in the Jacobi-argument convention."""

import math
from functools import lru_cache
from typing import Union

import numpy as np
import scipy.special as sp
from numpy.typing import ArrayLike

from .errors import CharacteristicError, DivergenceError, PoleError
from .jacobi import as_argument, first_flagged, quarter_period, reduced_amplitude, scalar_or_array
from .modulus import Modulus, ModulusRegime, as_modulus


# =============================================================================
# COMPLETE INTEGRALS
# =============================================================================

@lru_cache(maxsize=512)
def _ellipe(m: float) -> float:
    return float(sp.ellipe(m))


@lru_cache(maxsize=1024)
def _complete_pi(k: float, m: float) -> float:
    q2 = 1.0 - m
    return float(sp.elliprf(0.0, q2, 1.0) + k / 3.0 * sp.elliprj(0.0, q2, 1.0, 1.0 - k))


def complete_F(m: Union[Modulus, float]) -> float:
    """F_p = F(π/2, p)."""
    m = as_modulus(m)
    m.require_standard()
    if m.p == 1.0:
        raise DivergenceError("F_p diverges at p = 1")
    return quarter_period(m)


def complete_E(m: Union[Modulus, float]) -> float:
    """E_p = E(π/2, p)."""
    m = as_modulus(m)
    m.require_standard()
    if m.p == 0.0:
        return math.pi / 2
    if m.p == 1.0:
        return 1.0
    return _ellipe(m.m)


def complete_Pi(k: float, m: Union[Modulus, float]) -> float:
    """Π^k_p = ∫₀^{π/2} dφ / ((1 - k sin²φ)·sqrt(1 - p² sin²φ)) for k < 1."""
    m = as_modulus(m)
    m.require_standard()
    if k >= 1.0:
        raise CharacteristicError(f"Complete Π needs k < 1, got k={k!r}")
    if m.p == 1.0:
        raise DivergenceError("Π^k_p diverges at p = 1")
    if k == 0.0:
        return complete_F(m)
    if m.p == 0.0:
        return math.pi / (2.0 * math.sqrt(1.0 - k))
    return _complete_pi(float(k), m.m)


# =============================================================================
# INCOMPLETE INTEGRALS
# =============================================================================

def incomplete_F(s: ArrayLike, m: Union[Modulus, float]):
    """F(s|p) = F(am_p(s), p), which equals s up to rounding."""
    m = as_modulus(m)
    if m.regime is not ModulusRegime.STANDARD:
        return incomplete_Pi(0.0, m, s)
    s = as_argument(s)
    if m.p in (0.0, 1.0):
        return scalar_or_array(s.copy())
    turns, phi0 = reduced_amplitude(s, m)
    return scalar_or_array(2.0 * turns * complete_F(m) + sp.ellipkinc(phi0, m.m))


def incomplete_E(s: ArrayLike, m: Union[Modulus, float]):
    """E(s|p) = E(am_p(s), p) = ∫₀^s dn_p²(u) du."""
    m = as_modulus(m)
    m.require_standard()
    s = as_argument(s)
    if m.p == 0.0:
        return scalar_or_array(s.copy())
    if m.p == 1.0:
        return scalar_or_array(np.tanh(s))
    turns, phi0 = reduced_amplitude(s, m)
    return scalar_or_array(2.0 * turns * complete_E(m) + sp.ellipeinc(phi0, m.m))


def integral_sn2(s: ArrayLike, m: Union[Modulus, float]):
    """∫₀^s sn_p²(u) du."""
    m = as_modulus(m)
    s = as_argument(s)
    if m.p == 0.0:
        return scalar_or_array(s / 2.0 - np.sin(2.0 * s) / 4.0)
    return scalar_or_array((s - np.asarray(incomplete_E(s, m))) / m.m)


def _pi_hyperbolic(k: float, s: np.ndarray) -> np.ndarray:
    """Π(k;1|s) in closed form."""
    if k == 1.0:
        return s / 2.0 + np.sinh(2.0 * s) / 4.0
    t = np.tanh(s)
    if k > 1.0:
        crossed = k * t * t >= 1.0
        if np.any(crossed):
            location = first_flagged(s, crossed)
            pole = math.copysign(math.atanh(1.0 / math.sqrt(k)), location)
            raise PoleError(f"Π integrand pole crossed at s={pole!r} (k={k!r}, p=1)", location, pole)
    if k > 0.0:
        root = math.sqrt(k)
        return (s - root * np.arctanh(root * t)) / (1.0 - k)
    root = math.sqrt(-k)
    return (s + root * np.arctan(root * t)) / (1.0 - k)


def incomplete_Pi(k: float, m: Union[Modulus, float], s: ArrayLike):
    """
    Π(k;p|s) = ∫₀^s du / (1 - k·sn_p²(u)).

    Evaluated as x·R_F(cos²φ0, Δ², 1) + (k/3)·x³·R_J(cos²φ0, Δ², 1, 1 - k·x²), x = sin φ0,
    on the reduced amplitude, plus 2·turns·Π^k_p. Reaching k·sn² = 1 raises PoleError at
    the crossing.
    """
    m = as_modulus(m)
    if m.regime is not ModulusRegime.STANDARD:
        from .transforms import pi_transforms

        return pi_transforms(k, m, 1.0, s)
    s = as_argument(s)
    k = float(k)
    if k == 0.0:
        return incomplete_F(s, m)
    if m.p == 1.0:
        return scalar_or_array(_pi_hyperbolic(k, s))

    turns, phi0 = reduced_amplitude(s, m)
    if k >= 1.0:
        theta_c = math.asin(1.0 / math.sqrt(k))
        crossed = np.abs(turns * math.pi + phi0) >= theta_c
        if np.any(crossed):
            location = first_flagged(s, crossed)
            pole = math.copysign(float(sp.ellipkinc(theta_c, m.m)), location)
            raise PoleError(f"Π integrand pole crossed at s={pole!r} (k={k!r}, {m})", location, pole)

    x = np.sin(phi0)
    c2 = np.cos(phi0) ** 2
    delta2 = 1.0 - m.m * x * x
    value = x * sp.elliprf(c2, delta2, 1.0) + k / 3.0 * x ** 3 * sp.elliprj(c2, delta2, 1.0, 1.0 - k * x * x)
    if np.any(turns != 0):
        value = value + 2.0 * turns * complete_Pi(k, m)
    return scalar_or_array(value)
