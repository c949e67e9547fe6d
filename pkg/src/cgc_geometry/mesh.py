"""Triangulation-ready quad meshes of embedded surfaces with curvature and quality data."""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.ndimage import binary_dilation

from cgc_profiles import CaseParams, Rotation, default_window

from .ambient import Model, embed, project
from .errors import GeometryError
from .normal import normal_field
from .parallel import offset_normal, parallel_offset

logger = logging.getLogger(__name__)

# Maps rotation to the default θ range of a mesh
_THETA_RANGES: dict[Rotation, tuple[float, float]] = {
    Rotation.ELLIPTIC: (0.0, 2 * math.pi),
    Rotation.HYPERBOLIC: (-2.0, 2.0),
    Rotation.PARABOLIC: (-1.0, 1.0),
}


@dataclass(frozen=True)
class MeshQuality:
    max_quadric_violation: float
    max_curvature_error: Optional[float]
    singular_vertices: int
    collar_vertices: int
    fd_fallback_vertices: int
    target_K: Optional[float]


@dataclass(frozen=True)
class SurfaceMesh:
    """
    Grid mesh of n_s × n_theta vertices; vertex (i, j) has index i·n_theta + j.

    ``faces`` are 0-based quads (i,j), (i+1,j), (i+1,j+1), (i,j+1). K_est and H_est
    are NaN on singular points and their collar; K_int = K_est + κ.
    """

    n_s: int
    n_theta: int
    model: Model
    vertices: np.ndarray
    faces: np.ndarray
    K_est: np.ndarray
    H_est: np.ndarray
    K_int: np.ndarray
    singular: np.ndarray
    quality: MeshQuality


def default_model(params: CaseParams) -> Model:
    return Model.STEREO if params.case.space.kappa == 1 else Model.BALL


def quad_faces(n_s: int, n_theta: int) -> np.ndarray:
    i, j = np.meshgrid(np.arange(n_s - 1), np.arange(n_theta - 1), indexing="ij")
    base = (i * n_theta + j).ravel()
    return np.stack([base, base + n_theta, base + n_theta + 1, base + 1], axis=-1)


def build_mesh(
    params: CaseParams,
    n_s: int = 400,
    n_theta: int = 120,
    model: Optional[Union[Model, str]] = None,
    window: Optional[tuple[float, float]] = None,
    theta_range: Optional[tuple[float, float]] = None,
    offset: Optional[float] = None,
    curvature: bool = True,
    h: float = 1e-4,
    collar: int = 2,
) -> SurfaceMesh:
    """
    Sample the surface (or its parallel offset at distance ``offset``) on a grid and project it.

    Singular points stay in the mesh but carry NaN curvature, as does a collar of
    ``collar`` grid steps around them.

    Usage:
        params = CaseParams.build(CaseId.resolve(S3, 1.0, "cn"), p=0.5)
        mesh = build_mesh(params, n_s=100, n_theta=40)
        mesh.quality.max_curvature_error
    """
    from cgc_verify.curvature import curvature_fd

    if n_s < 2 or n_theta < 2:
        raise GeometryError(f"A mesh needs at least 2×2 samples, got {n_s}×{n_theta}")
    space = params.case.space
    model = default_model(params) if model is None else Model(model)
    lo, hi = window if window is not None else default_window(params)
    t_lo, t_hi = theta_range if theta_range is not None else _THETA_RANGES[space.rotation]
    S, T = np.meshgrid(np.linspace(lo, hi, n_s), np.linspace(t_lo, t_hi, n_theta), indexing="ij")

    field = normal_field(params, S, T)
    singular = field.singular.copy()
    if offset is None:
        point = embed(params, S, T)
    else:
        if np.any(singular):
            raise GeometryError(f"{params.case.label}: parallel offset undefined at {int(np.count_nonzero(singular))} singular point(s)")
        point = parallel_offset(params, offset, S, T)
    coords = project(point, model)
    vertices = coords.reshape(-1, coords.shape[-1])

    nan = np.full(S.shape, np.nan)
    K_est, H_est = nan, nan.copy()
    collar_mask = np.zeros(S.shape, dtype=bool)
    if curvature:
        if offset is None:
            sampler = lambda s, th: embed(params, s, th)
            reference = np.nan_to_num(field.n.x)
        else:
            sampler = lambda s, th: parallel_offset(params, offset, s, th)
            reference = offset_normal(params, offset, S, T).x
        est = curvature_fd(sampler, S, T, h=h, orientation=reference)
        singular |= ~est.valid
        if collar > 0 and np.any(singular):
            collar_mask = binary_dilation(singular, iterations=collar) & ~singular
            logger.info(
                "%s: skipping curvature on %d singular point(s) and a %d-vertex collar",
                params.case.label, int(np.count_nonzero(singular)), int(np.count_nonzero(collar_mask)),
            )
        skip = singular | collar_mask
        K_est = np.where(skip, np.nan, est.K)
        H_est = np.where(skip, np.nan, est.H)

    target = params.case.K if offset is None or offset == 0 else None
    smooth = np.isfinite(K_est)
    max_error = None
    if target is not None and np.any(smooth):
        max_error = float(np.max(np.abs(K_est[smooth] - target)))

    quality = MeshQuality(
        max_quadric_violation=float(np.max(point.quadric_violation())),
        max_curvature_error=max_error,
        singular_vertices=int(np.count_nonzero(singular)),
        collar_vertices=int(np.count_nonzero(collar_mask)),
        fd_fallback_vertices=int(np.count_nonzero(field.fallback)),
        target_K=target,
    )
    return SurfaceMesh(
        n_s=n_s,
        n_theta=n_theta,
        model=model,
        vertices=vertices,
        faces=quad_faces(n_s, n_theta),
        K_est=K_est.ravel(),
        H_est=H_est.ravel(),
        K_int=(K_est + space.kappa).ravel(),
        singular=singular.ravel(),
        quality=quality,
    )
