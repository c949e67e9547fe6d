"""Case identification, parameter validation and closed-form evaluation of profile curves."""

import logging
import math
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike

from cgc_elliptic import (
    JacobiEval,
    Modulus,
    PoleError,
    complete_F,
    incomplete_Pi,
    integral_sn2,
    jacobi,
)
from cgc_elliptic.jacobi import scalar_or_array

from .errors import (
    BoundaryCaseError,
    BoundsError,
    ConstraintViolationError,
    DegenerateCaseError,
    DegenerateLimit,
    ProfileError,
    RegimeError,
)
from .ode import OdeSystem
from .space import Branch, Regime, Rotation, SpaceForm, regime_for
from .tables import ParamInterval, Row, Shape, bound_reason, c_bounds, lookup, rows_for

logger = logging.getLogger(__name__)

# Coefficients closer than this to zero count as degenerate
DEGENERATE_TOL = 1e-14


# =============================================================================
# CASES
# =============================================================================

@dataclass(frozen=True)
class CaseId:
    """One row of the profile tables: space form, curvature K, regime block and branch."""

    space: SpaceForm
    K: float
    regime: Regime
    branch: Branch

    @classmethod
    def resolve(cls, space: SpaceForm, K: float, branch: Union[str, Branch]) -> "CaseId":
        if isinstance(branch, str):
            try:
                branch = Branch(branch.lower())
            except ValueError:
                raise RegimeError(f"Unknown branch tag {branch!r}. Valid tags: {[b.value for b in Branch]}")
        case = cls(space, float(K), regime_for(space, K), branch)
        lookup(space, case.regime, branch)
        return case

    @property
    def row(self) -> Row:
        return lookup(self.space, self.regime, self.branch)

    @property
    def interval(self) -> ParamInterval:
        return self.row.interval(self.K)

    @property
    def label(self) -> str:
        return f"{self.space} K={self.K!r} {self.branch.value}"


def classify(space: SpaceForm, K: float) -> list[CaseId]:
    """All branches for (space, K); each CaseId carries its admissible interval."""
    regime = regime_for(space, K)
    return [CaseId(space, float(K), regime, branch) for branch, _ in rows_for(space, K)]


# =============================================================================
# PARAMETERS
# =============================================================================

@dataclass(frozen=True)
class PsiReduction:
    """
    ψ' = α + β/(1 - c·r²) with 1/(1 - c·amp²·f²) = λ(1 - μ·sn²)/(1 - k·sn²),
    so ψ(s) = α·s + (βλ/𝒜)·G(𝒜s), G(x) = ∫₀^x (1 - μ sn²)/(1 - k sn²).
    """

    alpha: float
    beta: float
    c: float
    lam: float
    mu: float
    k: float


def _psi_reduction(space: SpaceForm, K: float, C: float, shape: Shape, amp2: float, m: float) -> PsiReduction:
    kappa, k1, k2 = space.kappa, space.kappa1, space.kappa2
    alpha = -K / (kappa * k2)
    beta = (K + kappa - kappa * C) / (kappa * k2)
    c = kappa * k1
    ca2 = c * amp2
    one = 1.0 - ca2
    if shape is not Shape.SC and abs(one) < DEGENERATE_TOL:
        raise DegenerateCaseError("d vanishes identically along the profile", DegenerateLimit.GEODESIC)
    if shape is Shape.CN:
        lam, mu, k = 1 / one, 0.0, -ca2 / one
    elif shape is Shape.DN:
        lam, mu, k = 1 / one, 0.0, -ca2 * m / one
    elif shape is Shape.CD:
        lam, mu, k = 1 / one, m, (m - ca2) / one
    elif shape is Shape.NC:
        lam, mu, k = 1 / one, 1.0, 1 / one
    elif shape is Shape.SC:
        lam, mu, k = 1.0, 1.0, 1 + ca2
    elif shape is Shape.DC:
        lam, mu, k = 1 / one, 1.0, (1 - ca2 * m) / one
    else:
        lam, mu, k = 1 / one, 0.0, 0.0
    return PsiReduction(alpha, beta, c, lam, mu, k)


@dataclass(frozen=True)
class CaseParams:
    """
    Numeric parameters of one table row.

    ``param`` is the free parameter of the row: the elliptic modulus p, the
    flat-front parameter, r0 for Clifford tori, or C on parabolic rows.
    ``modulus`` is what the Jacobi functions are evaluated with and
    r(s) = amp·f(A·s).

    Usage:
        case = CaseId.resolve(S3, 1.0, "cn")
        params = CaseParams.build(case, p=0.5)
        sample = profile(params, np.linspace(0, 1, 5))
    """

    case: CaseId
    param: float
    modulus: Modulus
    A: float
    amp: float
    C: float
    reduction: Optional[PsiReduction] = None

    @property
    def p(self) -> Modulus:
        return Modulus.from_raw(self.param)

    @classmethod
    def build(cls, case: CaseId, p: Optional[float] = None, C: Optional[float] = None) -> "CaseParams":
        row, K = case.row, case.K
        if (p is None) == (C is None):
            raise ProfileError("Exactly one of p or C must be supplied")
        if row.free == "C":
            if C is None:
                raise ProfileError(f"{case.label}: branch is parametrised by C, not p")
            param = float(C)
        else:
            param = modulus_from_C(case, C).p if p is None else float(p)

        interval = row.interval(K)
        if not interval.contains(param):
            raise BoundsError(f"{case.label}: {interval.name}={param!r} outside {interval}")
        C_value = row.c_of(K, param) if row.free == "p" else param
        if math.isnan(C_value):
            raise DegenerateCaseError(f"{case.label}: C is undetermined at p={param!r}", DegenerateLimit.POINT)
        if math.isinf(C_value):
            raise DegenerateCaseError(f"{case.label}: C is unbounded at p={param!r}", DegenerateLimit.POINT)
        bounds = c_bounds(case.space, K)
        if not bounds.contains(C_value, tol=1e-10):
            raise BoundsError(f"{case.label}: C={C_value!r} violates {bound_reason(case.space, K)}")

        try:
            amp2 = row.amp2(K, param, C_value)
            scale2 = row.scale2(K, param, C_value)
        except ZeroDivisionError:
            raise DegenerateCaseError(f"{case.label}: coefficients blow up at {param!r}", DegenerateLimit.POINT)
        if not (math.isfinite(amp2) and math.isfinite(scale2)) or max(amp2, scale2) > 1 / DEGENERATE_TOL:
            raise DegenerateCaseError(f"{case.label}: coefficients blow up at {param!r}", DegenerateLimit.POINT)
        if amp2 <= DEGENERATE_TOL:
            raise DegenerateCaseError(f"{case.label}: amplitude vanishes at {param!r}", DegenerateLimit.GEODESIC)
        if scale2 <= DEGENERATE_TOL:
            raise DegenerateCaseError(
                f"{case.label}: argument scale vanishes at {param!r}", DegenerateLimit.CLIFFORD_TORUS
            )

        modulus = Modulus.from_raw(row.modulus(K, param))
        reduction = None
        if case.space.rotation is not Rotation.PARABOLIC:
            reduction = _psi_reduction(case.space, K, C_value, row.shape, amp2, modulus.m)
        logger.debug("%s: param=%r C=%r amp=%r A=%r %s", case.label, param, C_value, amp2 ** 0.5, scale2 ** 0.5, modulus)
        return cls(
            case=case,
            param=param,
            modulus=modulus,
            A=math.sqrt(scale2),
            amp=math.sqrt(amp2),
            C=C_value,
            reduction=reduction,
        )

    @property
    def shape(self) -> Shape:
        return self.case.row.shape

    def with_amp_scale(self, factor: float) -> "CaseParams":
        """Copy with the amplitude multiplied by ``factor`` (mutation runs)."""
        return replace(self, amp=self.amp * factor)


def modulus_from_C(case: CaseId, C: float) -> Modulus:
    """Row parameter for a given integration constant (inverse of the row's Möbius relation)."""
    row, K = case.row, case.K
    bounds = c_bounds(case.space, K)
    if not bounds.contains(C):
        raise BoundsError(f"C={C!r} violates {bound_reason(case.space, K)}")
    interval = row.interval(K)
    if row.free == "C":
        if not interval.contains(C):
            raise BoundsError(f"{case.label}: C={C!r} outside {interval}")
        return Modulus.from_raw(row.modulus(K, C))
    if row.mobius is None:
        raise ProfileError(f"{case.label}: this branch is parametrised by r0 and always has C=0")

    alpha, beta, gamma, delta = row.mobius(K)
    denominator = gamma * C - alpha
    if abs(denominator) < DEGENERATE_TOL * (1.0 + abs(C)):
        raise BoundaryCaseError(f"{case.label}: C={C!r} is the boundary of the branch where the modulus degenerates")
    p2 = (beta - delta * C) / denominator
    if p2 < -1e-12:
        raise BoundsError(f"{case.label}: C={C!r} is not reached by this branch ({interval})")
    p = math.sqrt(max(p2, 0.0))
    if not interval.contains(p):
        raise BoundsError(f"{case.label}: C={C!r} maps to p={p!r} outside {interval}")
    return Modulus.from_raw(p)


def C_from_modulus(case: CaseId, p: Union[float, Modulus]) -> float:
    row, K = case.row, case.K
    if row.free == "C":
        raise ProfileError(f"{case.label}: C is the free parameter of this branch")
    value = p.p if isinstance(p, Modulus) else float(p)
    interval = row.interval(K)
    if not interval.contains(value):
        raise BoundsError(f"{case.label}: p={value!r} outside {interval}")
    return row.c_of(K, value)


# =============================================================================
# EVALUATION
# =============================================================================

@dataclass(frozen=True)
class ProfileSample:
    """(s, r, ψ, d) with the analytic derivatives r' and ψ'."""

    s: Union[float, np.ndarray]
    r: Union[float, np.ndarray]
    psi: Union[float, np.ndarray]
    d: Union[float, np.ndarray]
    dr: Union[float, np.ndarray]
    dpsi: Union[float, np.ndarray]


# r = amp·f(A·s) blows up at A·s = ±F for these shapes
_POLE_SHAPES = frozenset({Shape.SC, Shape.NC, Shape.DC})


def _shape_values(shape: Shape, ev: JacobiEval, m: Modulus) -> tuple[np.ndarray, np.ndarray]:
    """f(x) and f'(x) for the Jacobi shape of r."""
    sn, cn, dn = np.asarray(ev.sn), np.asarray(ev.cn), np.asarray(ev.dn)
    if shape is Shape.CN:
        return cn, -sn * dn
    if shape is Shape.DN:
        return dn, -m.m * sn * cn
    if shape is Shape.CD:
        return np.asarray(ev.ratio("cd")), -(1 - m.m) * sn / dn ** 2
    if shape is Shape.SC:
        return np.asarray(ev.ratio("sc")), dn / cn ** 2
    if shape is Shape.NC:
        return np.asarray(ev.ratio("nc")), sn * dn / cn ** 2
    if shape is Shape.DC:
        return np.asarray(ev.ratio("dc")), (1 - m.m) * sn / cn ** 2
    return np.ones_like(sn), np.zeros_like(sn)


def _reduced_integral(red: PsiReduction, ev: JacobiEval, m: Modulus, x: np.ndarray):
    """G(x) and G'(x) of the ψ reduction."""
    sn2 = np.asarray(ev.sn) ** 2
    dG = (1 - red.mu * sn2) / (1 - red.k * sn2)
    if abs(red.k) < DEGENERATE_TOL:
        G = x if red.mu == 0.0 else x - red.mu * np.asarray(integral_sn2(x, m))
    else:
        ratio = red.mu / red.k
        G = ratio * x + (1 - ratio) * np.asarray(incomplete_Pi(red.k, m, x))
    return G, dG


def _inverse_square_integral(params: CaseParams, x: np.ndarray) -> np.ndarray:
    """∫₀^s du / r² for the parabolic rows, with x = A·s."""
    m = params.modulus
    if params.shape is Shape.DN:
        H = np.asarray(incomplete_Pi(m.m, m, x))
    else:
        H = x - np.asarray(integral_sn2(x, m))
    return H / (params.amp ** 2 * params.A)


def profile(params: CaseParams, s: ArrayLike) -> ProfileSample:
    """Evaluate r, ψ, d and r', ψ' of the closed-form profile at s (scalar or array)."""
    s = np.asarray(s, dtype=float)
    space, K = params.case.space, params.case.K
    A = params.A
    x = A * s
    if params.shape in _POLE_SHAPES and params.modulus.p < 1.0:
        F = complete_F(params.modulus)
        outside = np.abs(x) >= F
        if np.any(outside):
            location = float(s[outside].flat[0]) if s.ndim else float(s)
            pole = math.copysign(F / A, location)
            raise PoleError(
                f"{params.case.label}: r has a pole at s={pole!r} (evaluated at s={location!r})", location, pole
            )
    ev = jacobi(x, params.modulus)
    f, df = _shape_values(params.shape, ev, params.modulus)

    r = params.amp * f
    dr = params.amp * A * df

    if space.rotation is Rotation.PARABOLIC:
        if np.any(r <= 0):
            raise ConstraintViolationError(f"{params.case.label}: parabolic profiles need r > 0")
        psi = K * s - params.C * _inverse_square_integral(params, x)
        dpsi = K - params.C / r ** 2
        d = 1.0 / (2.0 * r)
    else:
        red = params.reduction
        G, dG = _reduced_integral(red, ev, params.modulus, x)
        psi = red.alpha * s + red.beta * red.lam / A * G
        dpsi = red.alpha + red.beta * red.lam * dG
        d2 = (1 - red.c * r ** 2) / (space.kappa * space.kappa2)
        if np.any(d2 < -1e-12):
            hint = "; hyperbolic rotation needs r² >= 1" if space.rotation is Rotation.HYPERBOLIC else ""
            raise ConstraintViolationError(
                f"{params.case.label}: quadric constraint fails (min d² = {float(np.min(d2))!r}){hint}"
            )
        d = np.sqrt(np.maximum(d2, 0.0))

    out = scalar_or_array
    return ProfileSample(s=out(s), r=out(r), psi=out(psi), d=out(d), dr=out(dr), dpsi=out(dpsi))


def ode_residual(params: CaseParams, s: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """(r'² - Q(r²), ψ' - P(r²)) from the analytic derivatives."""
    sample = profile(params, s)
    system = OdeSystem(params.case.space, params.case.K, params.C)
    x = np.asarray(sample.r) ** 2
    res_r = np.asarray(sample.dr) ** 2 - system.Q(x)
    res_psi = np.asarray(sample.dpsi) - system.P(x)
    return res_r[()], res_psi[()]


def default_window(params: CaseParams) -> tuple[float, float]:
    """Sampling window in s: one period, or the pole-free window for sc/nc/dc shapes."""
    shape, A, m = params.shape, params.A, params.modulus
    if shape is Shape.CONST:
        return -math.pi, math.pi
    if m.p == 1.0:
        return -2.0 / A, 2.0 / A
    F = complete_F(m)
    if shape in (Shape.CN, Shape.CD):
        return -2 * F / A, 2 * F / A
    if shape is Shape.DN:
        return -F / A, F / A
    return -0.95 * F / A, 0.95 * F / A


def flat_front(space: SpaceForm, C: float, s: ArrayLike):
    """
    Flat-front profile r(s) = sqrt((1-C)/κ₂)·cos(sqrt(C/κ₂)·s), in its real form.

    Negative C/κ₂ turns cos into cosh; negative (1-C)/κ₂ gives the sinh solution.
    """
    k2 = space.kappa2
    if k2 is None or space.kappa == 0:
        raise RegimeError(f"No flat-front formula for {space}")
    s = np.asarray(s, dtype=float)
    a2, w2 = (1 - C) / k2, C / k2
    if a2 >= 0 and w2 >= 0:
        r = math.sqrt(a2) * np.cos(math.sqrt(w2) * s)
    elif a2 >= 0:
        r = math.sqrt(a2) * np.cosh(math.sqrt(-w2) * s)
    else:
        r = math.sqrt(-a2) * np.sinh(math.sqrt(abs(w2)) * s)
    return r[()]
