"""
Parallel transformations of embedded surfaces, linear Weingarten fits and the
scan of a parallel family for its constant Gauss curvature members.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike
from scipy.optimize import minimize_scalar

from cgc_profiles import CaseParams, default_window

from .ambient import AmbientPoint, Signature, check_quadric, embed
from .errors import GeometryError
from .normal import unit_normal

logger = logging.getLogger(__name__)

# σ₂ below this fraction of σ₁ means the (K, 2H, 1) samples span less than a plane
RANK_TOL = 1e-9


# =============================================================================
# PARALLEL OFFSETS
# =============================================================================

def _transport(params: CaseParams, t: float, s: ArrayLike, theta: ArrayLike) -> tuple[AmbientPoint, AmbientPoint]:
    """Offset point and the normal carried along the normal geodesic to it."""
    f = embed(params, s, theta)
    n = unit_normal(params, s, theta)
    if f.signature is Signature.EUCLIDEAN4:
        t = math.remainder(t, 2 * math.pi)
        x = math.cos(t) * f.x + math.sin(t) * n.x
        nt = -math.sin(t) * f.x + math.cos(t) * n.x
    else:
        x = math.cosh(t) * f.x + math.sinh(t) * n.x
        nt = math.sinh(t) * f.x + math.cosh(t) * n.x
    return AmbientPoint(x, f.signature), AmbientPoint(nt, f.signature)


def parallel_offset(params: CaseParams, t: float, s: ArrayLike, theta: ArrayLike) -> AmbientPoint:
    """
    Offset by signed distance t along the unit normal.

    S³: cos(t)·f + sin(t)·n (t taken mod 2π). H³: cosh(t)·f + sinh(t)·n.
    """
    point, _ = _transport(params, t, s, theta)
    check_quadric(point)
    return point


def offset_normal(params: CaseParams, t: float, s: ArrayLike, theta: ArrayLike) -> AmbientPoint:
    """
    Unit normal of the offset at distance t, transported from the surface.

    S³: -sin(t)·f + cos(t)·n. H³: sinh(t)·f + cosh(t)·n. Its sign does not flip
    where the offset crosses the focal set, so pass it as the curvature orientation.
    """
    _, normal = _transport(params, t, s, theta)
    return normal

# =============================================================================
# LINEAR WEINGARTEN FIT
# =============================================================================

@dataclass(frozen=True)
class LWFit:
    """
    Least-squares solution of a·K + 2b·H + c = 0 with a² + b² + c² = 1.

    ``residual`` is σ_min/√n. A degenerate fit (constant K and H) carries the
    whole solution family as rows of ``family``.
    """

    a: float
    b: float
    c: float
    residual: float
    n_samples: int
    degenerate: bool = False
    family: Optional[np.ndarray] = field(default=None, compare=False)

    @property
    def tubularity(self) -> float:
        """ac - b²; zero for tubular surfaces."""
        return self.a * self.c - self.b * self.b

    @property
    def coefficients(self) -> np.ndarray:
        return np.array([self.a, self.b, self.c])


def _canonical_sign(v: np.ndarray) -> np.ndarray:
    lead = v[np.argmax(np.abs(v) > 1e-12)]
    return -v if lead < 0 else v


def lw_fit(K: ArrayLike, H: ArrayLike) -> LWFit:
    """Fit a linear Weingarten relation to (K, H) samples; non-finite samples are dropped."""
    K, H = np.broadcast_arrays(np.asarray(K, dtype=float).ravel(), np.asarray(H, dtype=float).ravel())
    keep = np.isfinite(K) & np.isfinite(H)
    K, H = K[keep], H[keep]
    n = K.size
    if n < 3:
        raise GeometryError(f"lw_fit needs at least 3 finite samples, got {n}")

    M = np.column_stack([K, 2 * H, np.ones(n)])
    _, sigma, vt = np.linalg.svd(M, full_matrices=False)
    a, b, c = _canonical_sign(vt[-1])
    residual = float(sigma[-1] / math.sqrt(n))
    if sigma[1] < RANK_TOL * sigma[0]:
        logger.debug("lw_fit: rank-1 samples, returning the two-parameter family")
        family = np.array([_canonical_sign(v) for v in vt[1:]])
        return LWFit(float(a), float(b), float(c), residual, n, degenerate=True, family=family)
    return LWFit(float(a), float(b), float(c), residual, n)


# =============================================================================
# BONNET SCAN
# =============================================================================

@dataclass(frozen=True)
class BonnetOffset:
    """Offset distance t whose parallel surface has constant K (up to ``spread``)."""

    t: float
    K: float
    spread: float


def sample_points(params: CaseParams) -> tuple[np.ndarray, np.ndarray]:
    """A 4×2 (s, θ) grid inside the sampling window, clear of the s = 0 turning point."""
    _, hi = default_window(params)
    s = hi * np.array([0.15, 0.22, 0.29, 0.36])
    theta = np.array([0.3, 0.9])
    return np.meshgrid(s, theta, indexing="ij")


def bonnet_scan(
    params: CaseParams,
    n_coarse: int = 72,
    tol: float = 1e-4,
    t_range: Optional[tuple[float, float]] = None,
    samples: Optional[Sequence[np.ndarray]] = None,
    h: float = 1e-3,
) -> list[BonnetOffset]:
    """
    Locate the parallel offsets with constant Gauss curvature.

    The spread (standard deviation of the finite-difference K over sample points)
    is scanned on a coarse grid; each local minimum is refined with a bounded
    scalar minimisation and kept when spread <= tol·(1 + |K|). S³ scans the circle
    [0, 2π); H³ scans ``t_range`` (default [-2, 2]).
    """
    from cgc_verify.curvature import curvature_fd

    spherical = params.case.space.kappa == 1
    if t_range is None:
        t_range = (0.0, 2 * math.pi) if spherical else (-2.0, 2.0)
    S, T = samples if samples is not None else sample_points(params)

    def measure(t: float) -> tuple[float, float]:
        try:
            est = curvature_fd(lambda s, th: parallel_offset(params, t, s, th), S, T, h=h)
        except (ValueError, ArithmeticError):
            return math.inf, math.nan
        if not np.all(est.valid):
            return math.inf, math.nan
        return float(np.std(est.K)), float(np.mean(est.K))

    lo, hi = t_range
    grid = np.linspace(lo, hi, n_coarse, endpoint=not spherical)
    spreads = np.array([measure(t)[0] for t in grid])
    step = grid[1] - grid[0]

    found: list[BonnetOffset] = []
    for i in range(n_coarse):
        if spherical:
            left, right = spreads[i - 1], spreads[(i + 1) % n_coarse]
        else:
            left = spreads[i - 1] if i > 0 else math.inf
            right = spreads[i + 1] if i < n_coarse - 1 else math.inf
        if not (math.isfinite(spreads[i]) and spreads[i] <= left and spreads[i] <= right):
            continue
        result = minimize_scalar(
            lambda t: measure(t)[0],
            bounds=(grid[i] - step, grid[i] + step),
            method="bounded",
            options={"xatol": 1e-9},
        )
        t_star = float(result.x)
        spread, K = measure(t_star)
        logger.debug("bonnet_scan: local minimum near t=%.6g refined to %.9g (spread %.3g)", grid[i], t_star, spread)
        if spread <= tol * (1 + abs(K)):
            if spherical:
                t_star %= 2 * math.pi
            found.append(BonnetOffset(t_star, K, spread))

    found.sort(key=lambda o: o.t)
    return _dedupe(found, step, 2 * math.pi if spherical else None)


def _dedupe(found: list[BonnetOffset], step: float, period: Optional[float]) -> list[BonnetOffset]:
    """Plateaus can report one minimum from two neighbouring grid points."""
    out: list[BonnetOffset] = []
    for offset in found:
        if out and abs(offset.t - out[-1].t) < step:
            if offset.spread < out[-1].spread:
                out[-1] = offset
            continue
        out.append(offset)
    if period and len(out) > 1 and out[0].t + period - out[-1].t < step:
        if out[-1].spread < out[0].spread:
            out[0] = out[-1]
        out.pop()
    return out
