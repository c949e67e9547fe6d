"""
Gauss curvature of rotational surfaces from the polar coordinates (R, D, ψ) of
their Moutard lift, independent of the closed-form profile tables.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np
from numpy.typing import ArrayLike

from cgc_profiles import CaseParams, OdePath, OdeSystem, Rotation, SpaceForm, profile

from .errors import SingularSpeedError

# Central-difference step for second derivatives of R, D and ψ
DIFF_STEP = 1e-5


class LiftVariant(Enum):
    POLAR = "polar"
    PARABOLIC = "parabolic"
    EUCLIDEAN = "euclidean"


@dataclass(frozen=True)
class MoutardPolarData:
    """
    R, D and ψ with first and second derivatives at samples t of the profile.

    Polar lifts satisfy R = 1/(κr) and κ₂D² = κR² - κ₁; the parabolic variant only
    needs R, the Euclidean one only D = 1/r.
    """

    variant: LiftVariant
    kappa: int
    kappa1: int
    kappa2: int
    t: np.ndarray
    R: np.ndarray
    dR: np.ndarray
    ddR: np.ndarray
    D: np.ndarray
    dD: np.ndarray
    ddD: np.ndarray
    dpsi: np.ndarray
    ddpsi: np.ndarray


def _variant(space: SpaceForm) -> LiftVariant:
    if space.kappa == 0:
        return LiftVariant.EUCLIDEAN
    if space.rotation is Rotation.PARABOLIC:
        return LiftVariant.PARABOLIC
    return LiftVariant.POLAR


def _first_order(space: SpaceForm, r, dr, d, dpsi) -> tuple[np.ndarray, ...]:
    """(R, R', D, D', ψ') from profile data."""
    kappa = space.kappa
    if space.kappa == 0:
        return np.zeros_like(r), np.zeros_like(r), 1 / r, -dr / r ** 2, dpsi
    R, dR = 1 / (kappa * r), -dr / (kappa * r ** 2)
    if space.rotation is Rotation.PARABOLIC:
        dd = -dr / (2 * r ** 2)
    else:
        dd = -space.kappa1 * r * dr / (space.kappa2 * d)
    D, dD = d / r, (dd * r - d * dr) / r ** 2
    return R, dR, D, dD, dpsi


def from_profile(params: CaseParams, t: ArrayLike, h: float = DIFF_STEP) -> MoutardPolarData:
    """Moutard data of a table profile; second derivatives by central differences of the analytic first ones."""
    space = params.case.space
    t = np.atleast_1d(np.asarray(t, dtype=float))

    def first(x):
        sample = profile(params, x)
        return _first_order(space, *(np.asarray(v, dtype=float) for v in (sample.r, sample.dr, sample.d, sample.dpsi)))

    R, dR, D, dD, dpsi = first(t)
    plus, minus = first(t + h), first(t - h)
    ddR, ddD, ddpsi = ((plus[i] - minus[i]) / (2 * h) for i in (1, 3, 4))
    return MoutardPolarData(
        variant=_variant(space),
        kappa=space.kappa,
        kappa1=space.kappa1 or 0,
        kappa2=space.kappa2 or 0,
        t=t, R=R, dR=dR, ddR=ddR, D=D, dD=dD, ddD=ddD, dpsi=dpsi, ddpsi=ddpsi,
    )


def from_path(path: OdePath, system: OdeSystem, h: float = DIFF_STEP) -> MoutardPolarData:
    """Moutard data along an RK4 path; r'' = r·Q'(r²) and ψ'' = 2rr'·P'(r²)."""
    space = system.space
    r, dr = np.asarray(path.r, dtype=float), np.asarray(path.dr, dtype=float)
    x = r * r
    ddr = r * system.dQ(x)
    dpsi = np.asarray(system.P(x), dtype=float)
    ddpsi = 2 * r * dr * (system.P(x + h) - system.P(x - h)) / (2 * h)

    if space.kappa == 0:
        D, dD = 1 / r, -dr / x
        ddD = 2 * dr ** 2 / r ** 3 - ddr / x
        zero = np.zeros_like(r)
        return MoutardPolarData(LiftVariant.EUCLIDEAN, 0, 1, 1, path.s, zero, zero, zero, D, dD, ddD, dpsi, ddpsi)

    kappa = space.kappa
    R, dR = 1 / (kappa * r), -dr / (kappa * x)
    ddR = (2 * dr ** 2 / r ** 3 - ddr / x) / kappa
    if space.rotation is Rotation.PARABOLIC:
        nan = np.full_like(r, np.nan)
        return MoutardPolarData(LiftVariant.PARABOLIC, kappa, 0, 0, path.s, R, dR, ddR, nan, nan, nan, dpsi, ddpsi)
    k1, k2 = space.kappa1, space.kappa2
    D = np.sqrt(np.maximum((kappa * R ** 2 - k1) / k2, 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        dD = kappa * R * dR / (k2 * D)
        ddD = (kappa * (dR ** 2 + R * ddR) / k2 - dD ** 2) / D
    return MoutardPolarData(LiftVariant.POLAR, kappa, k1, k2, path.s, R, dR, ddR, D, dD, ddD, dpsi, ddpsi)


def constant_lift(space: SpaceForm, r: float, dpsi: float, n: int = 1) -> MoutardPolarData:
    """Lift of a profile with constant r and ψ' (Clifford tori, cylinders, horospheres)."""
    zero = np.zeros(n)
    R = np.full(n, 0.0 if space.kappa == 0 else 1 / (space.kappa * r))
    if space.kappa == 0:
        D = np.full(n, 1 / r)
    elif space.rotation is Rotation.PARABOLIC:
        D = np.full(n, np.nan)
    else:
        D = np.full(n, np.sqrt((space.kappa * R[0] ** 2 - space.kappa1) / space.kappa2))
    return MoutardPolarData(
        _variant(space), space.kappa, space.kappa1 or 0, space.kappa2 or 0,
        np.zeros(n), R, zero, zero, D, zero, zero, np.full(n, float(dpsi)), zero,
    )


# =============================================================================
# GAUSS CURVATURE
# =============================================================================

def _speed2(data: MoutardPolarData) -> np.ndarray:
    if data.variant is LiftVariant.PARABOLIC:
        return data.dpsi ** 2 - data.kappa * data.dR ** 2
    if data.variant is LiftVariant.EUCLIDEAN:
        return (data.kappa1 * data.dD ** 2 + data.dpsi ** 2 * data.D ** 4) / data.D ** 2
    k, k1, k2 = data.kappa, data.kappa1, data.kappa2
    return (k1 * k * data.dR ** 2 + k2 ** 3 * data.dpsi ** 2 * data.D ** 4) / (k2 * data.D ** 2)


def gauss_from_moutard(data: MoutardPolarData) -> np.ndarray:
    """
    Extrinsic Gauss curvature at every sample of ``data``.

    Raises SingularSpeedError where the lift speed v² vanishes.
    """
    v2 = _speed2(data)
    bad = (v2 == 0) | ~np.isfinite(v2)
    if np.any(bad):
        raise SingularSpeedError(f"Moutard lift speed vanishes at t={float(data.t[bad][0])!r}")
    v4 = v2 * v2
    R, dR, ddR = data.R, data.dR, data.ddR
    D, dD, ddD = data.D, data.dD, data.ddD
    p1, p2 = data.dpsi, data.ddpsi

    if data.variant is LiftVariant.EUCLIDEAN:
        return D ** 2 * p1 * (D * (p1 * ddD - p2 * dD) - 2 * dD ** 2 * p1) / v4
    k = data.kappa
    if data.variant is LiftVariant.PARABOLIC:
        return p1 / k * (k * R * (p1 * ddR - p2 * dR) - p1 * (p1 ** 2 - k * dR ** 2)) / v4
    k1, k2 = data.kappa1, data.kappa2
    numerator = (
        k * k2 * D ** 2 * R * (p1 * ddR - p2 * dR)
        - 2 * p1 * (k * R * dR) ** 2
        - p1 * (k1 * k * dR ** 2 + k2 ** 3 * p1 ** 2 * D ** 4)
    )
    return k * k2 * p1 * numerator / v4
