"""Tangent vectors and the unit normal of an embedded rotational surface."""

import logging
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike

from cgc_profiles import CaseParams, ProfileError, Rotation, SpaceForm, default_window, profile

from .ambient import AmbientPoint, _rotation_pair, assemble, embed, metric, signature_for
from .errors import SingularPointError

logger = logging.getLogger(__name__)

# d below this switches f_s to central differences (d' = -c·r·r'/(κκ₂·d) blows up)
FALLBACK_D = 1e-8
FALLBACK_STEP = 1e-5

# |c| below this fraction of |f|·|f_s|·|f_θ| marks a singular point
SINGULAR_TOL = 1e-10

# |f_s| below this fraction of |f| marks a cusp of the profile (r' = ψ' = 0)
SPEED_TOL = 1e-7

_BASIS = np.eye(4)


@dataclass(frozen=True)
class Frame:
    """Position, tangents and partials of the embedding at a grid of (s, θ)."""

    f: np.ndarray
    f_s: np.ndarray
    f_theta: np.ndarray
    increasing_d: np.ndarray
    fallback: np.ndarray


@dataclass(frozen=True)
class NormalField:
    """Unit normals; entries at singular points are NaN."""

    n: AmbientPoint
    singular: np.ndarray
    fallback: np.ndarray


def _partials(space: SpaceForm, r, psi, d, theta) -> dict[str, np.ndarray]:
    """∂f/∂r, ∂f/∂ψ, ∂f/∂d and ∂f/∂θ for the layouts used by ``assemble``."""
    zero = np.zeros_like(r)
    if space.rotation is Rotation.PARABOLIC:
        return {
            "r": np.stack([(theta ** 2 + psi ** 2) / 2 - 1 / (2 * r ** 2), np.ones_like(r), theta, psi], axis=-1),
            "psi": np.stack([r * psi, zero, zero, r], axis=-1),
            "d": np.zeros(r.shape + (4,)),
            "theta": np.stack([r * theta, zero, r, zero], axis=-1),
        }
    c, s = _rotation_pair(space.rotation, theta)
    if space.rotation is Rotation.HYPERBOLIC:
        d_theta = (r * s, r * c)
    else:
        d_theta = (-r * s, r * c)
    if space.kappa == -1 and space.rotation is Rotation.ELLIPTIC:
        ch, sh = np.cosh(psi), np.sinh(psi)
        return {
            "r": np.stack([zero, zero, c, s], axis=-1),
            "psi": np.stack([d * sh, d * ch, zero, zero], axis=-1),
            "d": np.stack([ch, sh, zero, zero], axis=-1),
            "theta": np.stack([zero, zero, *d_theta], axis=-1),
        }
    cp, sp = np.cos(psi), np.sin(psi)
    return {
        "r": np.stack([c, s, zero, zero], axis=-1),
        "psi": np.stack([zero, zero, -d * sp, d * cp], axis=-1),
        "d": np.stack([zero, zero, cp, sp], axis=-1),
        "theta": np.stack([*d_theta, zero, zero], axis=-1),
    }


def frame(params: CaseParams, s: ArrayLike, theta: ArrayLike) -> Frame:
    """Analytic f, f_s, f_θ; f_s falls back to central differences where d ≈ 0."""
    space = params.case.space
    s, theta = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(theta, dtype=float))
    sample = profile(params, s)
    r, psi, d = (np.asarray(v, dtype=float) for v in (sample.r, sample.psi, sample.d))
    dr, dpsi = np.asarray(sample.dr, dtype=float), np.asarray(sample.dpsi, dtype=float)
    parts = _partials(space, r, psi, d, theta)

    f_s = parts["r"] * dr[..., None] + parts["psi"] * dpsi[..., None]
    fallback = np.zeros(s.shape, dtype=bool)
    if space.rotation is Rotation.PARABOLIC:
        increasing_d = -parts["r"]
    else:
        increasing_d = parts["d"]
        fallback = np.abs(d) < FALLBACK_D
        kk2 = space.kappa * space.kappa2
        with np.errstate(divide="ignore", invalid="ignore"):
            dd = np.where(fallback, 0.0, -space.kappa * space.kappa1 * r * dr / (kk2 * np.where(fallback, 1.0, d)))
        f_s = f_s + parts["d"] * dd[..., None]
        if np.any(fallback):
            h = FALLBACK_STEP
            sf, tf = s[fallback], theta[fallback]
            f_s[fallback] = (embed(params, sf + h, tf).x - embed(params, sf - h, tf).x) / (2 * h)
            logger.debug("Normal: central-difference f_s at %d point(s) with d ≈ 0", int(np.count_nonzero(fallback)))

    f = assemble(space, r, psi, d, theta)
    return Frame(f=f, f_s=f_s, f_theta=parts["theta"], increasing_d=increasing_d, fallback=fallback)


def cofactor(f: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """c with c·v = det[v; f; a; b] for every v: Euclidean-orthogonal to f, a and b."""
    f, a, b = np.broadcast_arrays(f, a, b)
    out = np.empty(f.shape)
    for i in range(4):
        e = np.broadcast_to(_BASIS[i], f.shape)
        out[..., i] = np.linalg.det(np.stack([e, f, a, b], axis=-2))
    return out


def _singular(c: np.ndarray, g: np.ndarray, f: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Dependent tangents, or a stalled profile where f_s itself vanishes."""
    norm2 = np.einsum("...i,ij,...j->...", c, g, c)
    f_norm, a_norm = np.linalg.norm(f, axis=-1), np.linalg.norm(a, axis=-1)
    scale = f_norm * a_norm * np.linalg.norm(b, axis=-1)
    stalled = a_norm <= SPEED_TOL * f_norm
    return stalled | ~(np.sqrt(np.maximum(norm2, 0.0)) > SINGULAR_TOL * scale)


@lru_cache(maxsize=256)
def orientation(params: CaseParams) -> float:
    """
    ±1 so that the normal points towards increasing d on the profile at θ = 0.

    The reference point is s = 0, or half way to the window edge when s = 0 is singular.
    """
    g = metric(signature_for(params.case.space))
    _, hi = default_window(params)
    for s_ref in (0.0, 0.5 * hi):
        try:
            fr = frame(params, s_ref, 0.0)
        except ProfileError:
            continue
        c = cofactor(fr.f, fr.f_s, fr.f_theta)
        if _singular(c, g, fr.f, fr.f_s, fr.f_theta):
            continue
        dot = float(np.dot(c, fr.increasing_d))
        if abs(dot) > SINGULAR_TOL * float(np.linalg.norm(c)):
            return 1.0 if dot > 0 else -1.0
    logger.debug("%s: no usable orientation reference, keeping the cofactor sign", params.case.label)
    return 1.0


def normal_field(params: CaseParams, s: ArrayLike, theta: ArrayLike) -> NormalField:
    signature = signature_for(params.case.space)
    g = metric(signature)
    fr = frame(params, s, theta)
    c = cofactor(fr.f, fr.f_s, fr.f_theta)
    singular = _singular(c, g, fr.f, fr.f_s, fr.f_theta)
    norm2 = np.einsum("...i,ij,...j->...", c, g, c)
    with np.errstate(divide="ignore", invalid="ignore"):
        n = orientation(params) * (c @ g) / np.sqrt(norm2)[..., None]
    n[singular] = np.nan
    return NormalField(AmbientPoint(n, signature), singular, fr.fallback)


def unit_normal(params: CaseParams, s: ArrayLike, theta: ArrayLike) -> AmbientPoint:
    """
    Unit normal n of the embedded surface: ⟨n,n⟩ = 1 and n ⟂ f, f_s, f_θ.

    Raises SingularPointError at the first point where f_s and f_θ are dependent
    or f_s vanishes.
    """
    field = normal_field(params, s, theta)
    if np.any(field.singular):
        s_b, t_b = np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(theta, dtype=float))
        s0, t0 = float(s_b[field.singular].flat[0]), float(t_b[field.singular].flat[0])
        raise SingularPointError(f"{params.case.label}: singular point at s={s0!r}, θ={t0!r}", s0, t0)
    return field.n
