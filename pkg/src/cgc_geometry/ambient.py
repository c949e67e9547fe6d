"""
Ambient models: S³ ⊂ R⁴ and H³ ⊂ R^{3,1}, the embedding of profile data and the
projections used for display.

Points are numpy arrays with a trailing axis of length 4. H³ uses an orthonormal
basis for elliptic and hyperbolic rotations and a pseudo-orthonormal basis
(⟨x,y⟩ = -x0·y1 - x1·y0 + x2·y2 + x3·y3) for parabolic rotations.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np
from numpy.typing import ArrayLike

from cgc_profiles import CaseParams, Rotation, SpaceForm, profile

from .errors import ConsistencyError, GeometryError, ProjectionError

# Max |⟨f,f⟩ ∓ 1| relative to |f|² before an embedded point counts as inconsistent
QUADRIC_TOL = 1e-9

# Smallest admissible projection denominator
POLE_TOL = 1e-9


# =============================================================================
# ENUMS
# =============================================================================

class Signature(Enum):
    EUCLIDEAN4 = "euclidean4"
    LORENTZ_ORTHONORMAL = "lorentz_orthonormal"
    LORENTZ_PSEUDO = "lorentz_pseudo"


class Model(Enum):
    STEREO = "stereo"
    BALL = "ball"
    HALFSPACE = "halfspace"
    RAW4 = "raw4"


_METRICS: dict[Signature, np.ndarray] = {
    Signature.EUCLIDEAN4: np.eye(4),
    Signature.LORENTZ_ORTHONORMAL: np.diag([-1.0, 1.0, 1.0, 1.0]),
    Signature.LORENTZ_PSEUDO: np.array(
        [
            [0.0, -1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ]
    ),
}


def metric(signature: Signature) -> np.ndarray:
    """Gram matrix of the ambient inner product (each one is its own inverse)."""
    return _METRICS[signature]


def inner(signature: Signature, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return np.einsum("...i,ij,...j->...", x, _METRICS[signature], y)


def quadric_target(signature: Signature) -> float:
    """⟨f,f⟩ on the space form: +1 on S³, -1 on H³."""
    return 1.0 if signature is Signature.EUCLIDEAN4 else -1.0


def signature_for(space: SpaceForm) -> Signature:
    if space.kappa == 1:
        return Signature.EUCLIDEAN4
    if space.kappa == -1:
        if space.rotation is Rotation.PARABOLIC:
            return Signature.LORENTZ_PSEUDO
        return Signature.LORENTZ_ORTHONORMAL
    raise GeometryError(f"No ambient model for {space}: Euclidean profiles stay in R³")


@dataclass(frozen=True)
class AmbientPoint:
    """4-vector(s) in R⁴ or R^{3,1}; ``x`` has shape (..., 4)."""

    x: np.ndarray
    signature: Signature

    @property
    def quadric(self) -> np.ndarray:
        """⟨x,x⟩ under the ambient metric."""
        return inner(self.signature, self.x, self.x)

    def quadric_violation(self) -> np.ndarray:
        return np.abs(self.quadric - quadric_target(self.signature))

    def to_orthonormal(self) -> "AmbientPoint":
        """Pseudo -> orthonormal basis: T = (x0 + x1)/√2, X = (x0 - x1)/√2."""
        if self.signature is not Signature.LORENTZ_PSEUDO:
            return self
        return AmbientPoint(_swap_lorentz_basis(self.x), Signature.LORENTZ_ORTHONORMAL)

    def to_pseudo(self) -> "AmbientPoint":
        if self.signature is not Signature.LORENTZ_ORTHONORMAL:
            return self
        return AmbientPoint(_swap_lorentz_basis(self.x), Signature.LORENTZ_PSEUDO)


def _swap_lorentz_basis(x: np.ndarray) -> np.ndarray:
    """The basis change is its own inverse."""
    t, u = (x[..., 0] + x[..., 1]) / math.sqrt(2), (x[..., 0] - x[..., 1]) / math.sqrt(2)
    return np.stack([t, u, x[..., 2], x[..., 3]], axis=-1)


# =============================================================================
# EMBEDDING
# =============================================================================

def _rotation_pair(rotation: Rotation, theta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if rotation is Rotation.HYPERBOLIC:
        return np.cosh(theta), np.sinh(theta)
    return np.cos(theta), np.sin(theta)


def assemble(space: SpaceForm, r, psi, d, theta) -> np.ndarray:
    """Raw 4-vectors from profile data (r, ψ, d) and the rotation angle θ."""
    r, psi, d, theta = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (r, psi, d, theta)))
    if space.rotation is Rotation.PARABOLIC:
        x0 = (r * r * (theta * theta + psi * psi) + 1.0) / (2.0 * r)
        return np.stack([x0, r, r * theta, r * psi], axis=-1)
    c, s = _rotation_pair(space.rotation, theta)
    if space.kappa == 1:
        return np.stack([r * c, r * s, d * np.cos(psi), d * np.sin(psi)], axis=-1)
    if space.rotation is Rotation.ELLIPTIC:
        return np.stack([d * np.cosh(psi), d * np.sinh(psi), r * c, r * s], axis=-1)
    return np.stack([r * c, r * s, d * np.cos(psi), d * np.sin(psi)], axis=-1)


def check_quadric(point: AmbientPoint, tol: float = QUADRIC_TOL) -> None:
    violation = point.quadric_violation()
    scale = 1.0 + np.einsum("...i,...i->...", point.x, point.x)
    bad = violation > tol * scale
    if np.any(bad):
        worst = float(np.max(violation))
        raise ConsistencyError(f"Embedded point misses the quadric by {worst:.3g} ({point.signature.value})")
    if point.signature is Signature.LORENTZ_ORTHONORMAL and np.any(point.x[..., 0] <= 0):
        raise ConsistencyError("Embedded point lies on the lower sheet of the hyperboloid")


def embed(params: CaseParams, s: ArrayLike, theta: ArrayLike) -> AmbientPoint:
    """
    Rotational surface through the profile of ``params`` at (s, θ).

    Usage:
        params = CaseParams.build(CaseId.resolve(S3, -1.0, "trig"), p=0.6)
        embed(params, 0.0, 0.0).x     # [0.8, 0, 0.6, 0]
    """
    space = params.case.space
    signature = signature_for(space)
    s, theta = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(theta, dtype=float))
    sample = profile(params, s)
    point = AmbientPoint(assemble(space, sample.r, sample.psi, sample.d, theta), signature)
    check_quadric(point)
    return point


def rotation_matrix(space: SpaceForm, theta: float) -> np.ndarray:
    """The rotation ρ(θ) acting on ambient coordinates; embed(s, θ + t) = ρ(t)·embed(s, θ)."""
    R = np.eye(4)
    if space.rotation is Rotation.PARABOLIC:
        R[0, 2], R[0, 1] = theta, theta * theta / 2
        R[2, 1] = theta
        return R
    c, s = _rotation_pair(space.rotation, np.asarray(theta, dtype=float))
    i, j = (2, 3) if space.kappa == -1 and space.rotation is Rotation.ELLIPTIC else (0, 1)
    R[i, i], R[j, j] = c, c
    if space.rotation is Rotation.HYPERBOLIC:
        R[i, j], R[j, i] = s, s
    else:
        R[i, j], R[j, i] = -s, s
    return R


# =============================================================================
# PROJECTION
# =============================================================================

def project(point: AmbientPoint, model: Union[Model, str]) -> np.ndarray:
    """
    Display coordinates of ambient points.

    stereo: x[1:4]/(1 + x0) from the pole (-1,0,0,0) of S³.
    ball: Poincaré ball, x[1:4]/(1 + x0) in the orthonormal basis.
    halfspace: upper half-space (x2, x3, 1)/x1 in the pseudo-orthonormal basis.
    raw4: the ambient coordinates unchanged.
    """
    model = Model(model)
    if model is Model.RAW4:
        return np.array(point.x, dtype=float)
    if model is Model.STEREO:
        if point.signature is not Signature.EUCLIDEAN4:
            raise ProjectionError("Stereographic projection needs points of S³")
        x = point.x
        denominator = 1.0 + x[..., 0]
        _check_denominator(denominator, "stereographic pole (-1,0,0,0)")
        return x[..., 1:] / denominator[..., None]
    if point.signature is Signature.EUCLIDEAN4:
        raise ProjectionError(f"The {model.value} model needs points of H³")
    if model is Model.BALL:
        x = point.to_orthonormal().x
        denominator = 1.0 + x[..., 0]
        _check_denominator(denominator, "ball boundary")
        return x[..., 1:] / denominator[..., None]
    x = point.to_pseudo().x
    denominator = x[..., 1]
    _check_denominator(denominator, "half-space boundary")
    return np.stack([x[..., 2], x[..., 3], np.ones_like(denominator)], axis=-1) / denominator[..., None]


def _check_denominator(denominator: np.ndarray, where: str) -> None:
    if np.any(denominator < POLE_TOL):
        raise ProjectionError(f"Point too close to the {where} (denominator {float(np.min(denominator)):.3g})")
