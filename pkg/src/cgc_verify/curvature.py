"""Finite-difference Gauss and mean curvature of a sampled surface in S³ or H³."""

import logging
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.typing import ArrayLike

from cgc_geometry.ambient import AmbientPoint, Signature, metric
from cgc_geometry.normal import SINGULAR_TOL, cofactor

logger = logging.getLogger(__name__)

Sampler = Callable[[np.ndarray, np.ndarray], AmbientPoint]

# Richardson error above this fraction of 1 + |K| invalidates a point
ERROR_TOL = 1e-3

# Stencil offsets in units of h: centre, axis neighbours, then the four diagonal corners
_STENCIL = (
    (0, 0),
    (1, 0), (-1, 0), (0, 1), (0, -1),
    (1, 1), (1, -1), (-1, 1), (-1, -1),
)


@dataclass(frozen=True)
class CurvatureEstimate:
    """
    Extrinsic Gauss curvature K = det II / det I and mean curvature H = ½·tr(I⁻¹ II).

    Entries where the sampler failed or the fundamental forms degenerate are NaN
    and flagged False in ``valid``, as are entries whose Richardson error exceeds
    ERROR_TOL·(1 + |K|). The errors are the Richardson difference estimates, NaN
    when extrapolation is off.
    """

    K: np.ndarray
    H: np.ndarray
    K_err: np.ndarray
    H_err: np.ndarray
    valid: np.ndarray
    normal: np.ndarray


def _sample(sampler: Sampler, s: np.ndarray, theta: np.ndarray) -> tuple[np.ndarray, Optional[Signature]]:
    """Sampled 4-vectors, NaN where the sampler refuses a point."""
    try:
        point = sampler(s, theta)
        return np.asarray(point.x, dtype=float), point.signature
    except (ValueError, ArithmeticError):
        pass
    x = np.full(s.shape + (4,), np.nan)
    signature = None
    for idx in np.ndindex(s.shape):
        try:
            point = sampler(s[idx], theta[idx])
        except (ValueError, ArithmeticError):
            continue
        x[idx], signature = point.x, point.signature
    return x, signature


def _ip(g: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    return np.asarray(np.einsum("...i,ij,...j->...", u, g, v))


def _single_step(sampler: Sampler, s: np.ndarray, theta: np.ndarray, h: float, orientation: Optional[np.ndarray]):
    values = {}
    signature = None
    for a, b in _STENCIL:
        values[a, b], sig = _sample(sampler, s + a * h, theta + b * h)
        signature = signature or sig
    if signature is None:
        return None
    g = metric(signature)

    f = values[0, 0]
    f_s = (values[1, 0] - values[-1, 0]) / (2 * h)
    f_t = (values[0, 1] - values[0, -1]) / (2 * h)
    f_ss = (values[1, 0] - 2 * f + values[-1, 0]) / (h * h)
    f_tt = (values[0, 1] - 2 * f + values[0, -1]) / (h * h)
    f_st = (values[1, 1] - values[1, -1] - values[-1, 1] + values[-1, -1]) / (4 * h * h)

    ok = np.all(np.isfinite(np.stack(list(values.values()))), axis=(0, -1))
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        c = cofactor(np.nan_to_num(f), np.nan_to_num(f_s), np.nan_to_num(f_t))
        norm2 = _ip(g, c, c)
        scale = np.linalg.norm(f, axis=-1) * np.linalg.norm(f_s, axis=-1) * np.linalg.norm(f_t, axis=-1)
        ok &= np.sqrt(np.maximum(norm2, 0.0)) > SINGULAR_TOL * scale
        n = (c @ g) / np.sqrt(norm2)[..., None]
        if orientation is not None:
            flip = _ip(g, n, orientation) < 0
            n = np.where(flip[..., None], -n, n)

        E, F, G = _ip(g, f_s, f_s), _ip(g, f_s, f_t), _ip(g, f_t, f_t)
        L, M, N = _ip(g, f_ss, n), _ip(g, f_st, n), _ip(g, f_tt, n)
        det_I = E * G - F * F
        ok &= det_I > 0
        K = np.asarray((L * N - M * M) / det_I, dtype=float)
        H = np.asarray((E * N - 2 * F * M + G * L) / (2 * det_I), dtype=float)
    ok &= np.isfinite(K) & np.isfinite(H)
    return K, H, n, ok


def curvature_fd(
    sampler: Sampler,
    s: ArrayLike,
    theta: ArrayLike,
    h: float = 1e-4,
    orientation: Optional[np.ndarray] = None,
    richardson: bool = True,
) -> CurvatureEstimate:
    """
    Estimate K and H of the surface ``sampler(s, θ)`` with central differences.

    Second-order stencils in s and θ, a four-point cross for the mixed derivative
    and the normal from the cofactor of the difference tangents. With
    ``richardson`` the step-h and step-h/2 results combine as (4·X(h/2) - X(h))/3.
    ``orientation`` (ambient vectors) fixes the normal sign and thereby the sign of H.
    Never raises on bad points; they come back NaN with ``valid`` False.
    """
    s, theta = (np.array(v, dtype=float) for v in np.broadcast_arrays(np.asarray(s, dtype=float), np.asarray(theta, dtype=float)))
    nan = np.full(s.shape, np.nan)

    coarse = _single_step(sampler, s, theta, h, orientation)
    if coarse is None:
        logger.debug("curvature_fd: sampler failed at every point")
        none_valid = np.zeros(s.shape, dtype=bool)
        return CurvatureEstimate(nan, nan.copy(), nan.copy(), nan.copy(), none_valid, np.full(s.shape + (4,), np.nan))
    K, H, n, ok = coarse
    K_err, H_err = nan.copy(), nan.copy()

    if richardson:
        reference = orientation if orientation is not None else np.nan_to_num(n)
        fine = _single_step(sampler, s, theta, h / 2, reference)
        if fine is None:
            ok = np.zeros(s.shape, dtype=bool)
        else:
            K2, H2, n, ok2 = fine
            ok &= ok2
            K_err, H_err = np.abs(K2 - K) / 3, np.abs(H2 - H) / 3
            K, H = (4 * K2 - K) / 3, (4 * H2 - H) / 3
            with np.errstate(invalid="ignore"):
                ok &= K_err <= ERROR_TOL * (1 + np.abs(K))

    invalid = ~ok
    if np.any(invalid):
        logger.debug("curvature_fd: %d of %d point(s) invalid", int(np.count_nonzero(invalid)), invalid.size)
    K, H, K_err, H_err = (np.where(invalid, np.nan, arr) for arr in (K, H, K_err, H_err))
    n = np.where(invalid[..., None], np.nan, n)
    return CurvatureEstimate(K=K, H=H, K_err=K_err, H_err=H_err, valid=ok, normal=n)
