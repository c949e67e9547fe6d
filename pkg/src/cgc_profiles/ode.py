"""
The profile ODEs and a fixed-step RK4 integrator for them.

With x = r², every profile satisfies r'² = Q(x) and ψ' = P(x). The integrator
works on the second-order form r'' = r·Q'(x), which passes through turning
points (simple roots of Q) without switching square-root branches by hand.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import ProfileError
from .space import Rotation, SpaceForm

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-4


@dataclass(frozen=True)
class OdeSystem:
    """Right-hand sides of r'² = Q(r²) and ψ' = P(r²) for one (space, K, C)."""

    space: SpaceForm
    K: float
    C: float

    @property
    def parabolic(self) -> bool:
        return self.space.rotation is Rotation.PARABOLIC

    def Q(self, x):
        K, C, kappa = self.K, self.C, self.space.kappa
        if self.parabolic:
            return (-1.0 / kappa) * (C - K * x) * ((K + kappa) * x - C)
        if kappa == 0:
            return ((1 - C) + K * x) * (C - K * x)
        k1, k2 = self.space.kappa1, self.space.kappa2
        return ((1 - C) + k1 * K * x) * (C - k1 * (K + kappa) * x) / (kappa * k1 * k2)

    def dQ(self, x):
        """dQ/dx."""
        K, C, kappa = self.K, self.C, self.space.kappa
        if self.parabolic:
            return (-1.0 / kappa) * (-K * ((K + kappa) * x - C) + (K + kappa) * (C - K * x))
        if kappa == 0:
            return K * (C - K * x) - K * ((1 - C) + K * x)
        k1, k2 = self.space.kappa1, self.space.kappa2
        first, second = (1 - C) + k1 * K * x, C - k1 * (K + kappa) * x
        return (k1 * K * second - k1 * (K + kappa) * first) / (kappa * k1 * k2)

    def P(self, x):
        K, C, kappa = self.K, self.C, self.space.kappa
        if self.parabolic:
            return (-1.0 / kappa) * (K - C / x)
        if kappa == 0:
            return (1 - C) + K * x
        k1, k2 = self.space.kappa1, self.space.kappa2
        alpha = -K / (kappa * k2)
        beta = (K + kappa - kappa * C) / (kappa * k2)
        return alpha + beta / (1 - kappa * k1 * x)


@dataclass
class OdePath:
    """Sampled RK4 trajectory with the turning points crossed on the way."""

    s: np.ndarray
    r: np.ndarray
    dr: np.ndarray
    psi: np.ndarray
    turning_points: list[float] = field(default_factory=list)
    refined_steps: int = 0

    def energy_residual(self, system: OdeSystem) -> np.ndarray:
        """r'² - Q(r²) along the path."""
        return self.dr ** 2 - system.Q(self.r ** 2)


def _rhs(system: OdeSystem, r: float, v: float) -> tuple[float, float, float]:
    x = r * r
    return v, r * system.dQ(x), system.P(x)


def _rk4_step(system: OdeSystem, r: float, v: float, psi: float, h: float) -> tuple[float, float, float]:
    k1 = _rhs(system, r, v)
    k2 = _rhs(system, r + h / 2 * k1[0], v + h / 2 * k1[1])
    k3 = _rhs(system, r + h / 2 * k2[0], v + h / 2 * k2[1])
    k4 = _rhs(system, r + h * k3[0], v + h * k3[1])
    return (
        r + h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]),
        v + h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]),
        psi + h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]),
    )


def integrate_ode(
    case,
    C: float,
    r0: float,
    s_span: tuple[float, float],
    K: Optional[float] = None,
    step: float = DEFAULT_STEP,
    dr0: Optional[float] = None,
    drift_tol: float = 1e-10,
    max_halvings: int = 8,
) -> OdePath:
    """
    Integrate the profile ODE from r(s0) = r0, ψ(s0) = 0 over s_span with fixed-step RK4.

    ``case`` is a CaseId, or a SpaceForm together with ``K`` (the Euclidean case has
    no table rows). Without ``dr0`` the initial slope is +sqrt(Q(r0²)). A step whose
    first-integral drift |r'² - Q(r²)| grows by more than ``drift_tol`` is retried with halved
    sub-steps; this happens near double roots of Q and is logged as a turning-point warning.
    """
    if isinstance(case, SpaceForm):
        if K is None:
            raise ProfileError("integrate_ode needs K when called with a SpaceForm")
        space = case
    else:
        space, K = case.space, case.K
    system = OdeSystem(space, K, C)

    q0 = system.Q(r0 * r0)
    if dr0 is None:
        if q0 < -1e-12:
            raise ProfileError(f"Q(r0²) = {q0!r} < 0: no real profile through r0={r0!r}")
        dr0 = math.sqrt(max(q0, 0.0))

    s0, s1 = s_span
    n = max(1, int(math.ceil(abs(s1 - s0) / step)))
    h = (s1 - s0) / n

    s_out = np.empty(n + 1)
    r_out, v_out, psi_out = np.empty(n + 1), np.empty(n + 1), np.empty(n + 1)
    r, v, psi = float(r0), float(dr0), 0.0
    s_out[0], r_out[0], v_out[0], psi_out[0] = s0, r, v, psi
    path = OdePath(s_out, r_out, v_out, psi_out)

    drift_prev = abs(v * v - q0)
    for i in range(n):
        pieces = 1
        while True:
            rr, vv, pp = r, v, psi
            for _ in range(pieces):
                rr, vv, pp = _rk4_step(system, rr, vv, pp, h / pieces)
            drift = abs(vv * vv - system.Q(rr * rr))
            if drift - drift_prev <= drift_tol * (1.0 + vv * vv) or pieces >= 2 ** max_halvings:
                break
            if pieces == 1:
                logger.warning("Turning point near s=%.6g: refining step (drift %.3g)", s0 + i * h, drift)
            pieces *= 2
        if pieces > 1:
            path.refined_steps += 1
        if v != 0.0 and vv != 0.0 and (v > 0) != (vv > 0):
            crossing = s0 + i * h + h * v / (v - vv)
            path.turning_points.append(crossing)
            logger.debug("Turning point crossed at s=%.9g (r=%.9g)", crossing, rr)
        r, v, psi, drift_prev = rr, vv, pp, drift
        s_out[i + 1], r_out[i + 1], v_out[i + 1], psi_out[i + 1] = s0 + (i + 1) * h, r, v, psi

    return path
