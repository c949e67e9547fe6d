"""
The verification suite: every oracle comparison over a configured case grid.

Each check group produces one report entry per case (or per p, or per period
job). A check that raises is recorded as a failing entry; the suite itself
never raises on oracle failures.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from cgc_elliptic import complete_E, complete_F, complete_Pi, jacobi
from cgc_geometry import (
    bonnet_scan,
    embed,
    lw_fit,
    offset_normal,
    parallel_offset,
    period_solve,
    sample_points,
)
from cgc_profiles import (
    CaseId,
    CaseParams,
    Rotation,
    Shape,
    SpaceForm,
    default_window,
    integrate_ode,
    ode_residual,
    profile,
)

from .curvature import curvature_fd
from .moutard import from_profile, gauss_from_moutard
from .report import CheckResult, VerificationReport

logger = logging.getLogger(__name__)

CHECK_GROUPS = ("elliptic", "residuals", "oracle", "quadric", "curvature", "parallel", "period")


# =============================================================================
# CONFIGURATION
# =============================================================================

@dataclass(frozen=True)
class CaseSpec:
    """
    One table row with its free parameter: p, or C for rows parametrised by C.

    ``bonnet`` adds the constant-curvature scan of its parallel family.
    """

    space: str
    K: float
    branch: str
    rotation: str = "elliptic"
    p: Optional[float] = None
    C: Optional[float] = None
    bonnet: bool = False

    @property
    def case(self) -> CaseId:
        return CaseId.resolve(SpaceForm.from_tag(self.space, self.rotation), self.K, self.branch)

    def build(self) -> CaseParams:
        return CaseParams.build(self.case, p=self.p, C=self.C)


@dataclass(frozen=True)
class Tolerances:
    elliptic: float = 1e-11
    residuals: float = 1e-8
    oracle: float = 1e-6
    quadric: float = 1e-11
    curvature: float = 5e-4
    parallel: float = 1e-6
    bonnet: float = 1e-3
    period: float = 1e-10
    closure: float = 1e-7


@dataclass(frozen=True)
class SuiteConfig:
    """
    Case grid and settings of one suite run; every grid is empty by default.

    ``perturb_amplitude`` scales each profile amplitude by (1 + value) so that
    mutation runs can show the residual checks failing.
    """

    cases: tuple[CaseSpec, ...] = ()
    checks: tuple[str, ...] = CHECK_GROUPS
    elliptic_p: tuple[float, ...] = ()
    offsets: tuple[float, ...] = ()
    periods: tuple[tuple[float, int], ...] = ()
    bonnet: bool = False
    n_samples: int = 200
    rk4_step: float = 2e-3
    fd_step: float = 1e-3
    perturb_amplitude: float = 0.0
    seed: int = 0
    tolerances: Tolerances = field(default_factory=Tolerances)


# =============================================================================
# CHECKS
# =============================================================================

def _guarded(name: str, tolerance: float, check: Callable[[], CheckResult]) -> CheckResult:
    try:
        return check()
    except (ValueError, ArithmeticError) as e:
        logger.warning("Check %s raised %s: %s", name, type(e).__name__, e)
        return CheckResult.failure(name, tolerance, f"{type(e).__name__}: {e}")


def _quad(integrand) -> float:
    return quad(integrand, 0.0, math.pi / 2, epsabs=1e-14, epsrel=1e-13, limit=200)[0]


def check_elliptic(p: float, tol: float) -> CheckResult:
    """Complete integrals against adaptive quadrature plus the sn/cn/dn identities."""
    m = p * p
    delta = lambda phi: math.sqrt(1 - m * math.sin(phi) ** 2)
    residuals = [
        abs(complete_F(p) - _quad(lambda phi: 1 / delta(phi))),
        abs(complete_E(p) - _quad(delta)),
    ]
    for k in (-0.5, 0.5):
        oracle = _quad(lambda phi: 1 / ((1 - k * math.sin(phi) ** 2) * delta(phi)))
        residuals.append(abs(complete_Pi(k, p) - oracle))
    s = np.linspace(-5.0, 5.0, 101)
    ev = jacobi(s, p)
    residuals.append(float(np.max(np.abs(ev.sn ** 2 + ev.cn ** 2 - 1))))
    residuals.append(float(np.max(np.abs(ev.dn ** 2 + m * ev.sn ** 2 - 1))))
    return CheckResult.measure(f"elliptic/p={p!r}", max(residuals), tol, 4 + 2 * s.size)


def _grid(params: CaseParams, n: int) -> np.ndarray:
    lo, hi = default_window(params)
    return np.linspace(lo, hi, n)


def check_residuals(params: CaseParams, n: int, tol: float) -> CheckResult:
    """Relative ODE residuals of the closed-form profile over its sampling window."""
    s = _grid(params, n)
    res_r, res_psi = ode_residual(params, s)
    sample = profile(params, s)
    scale_r = 1 + np.asarray(sample.dr) ** 2
    scale_psi = 1 + np.abs(np.asarray(sample.dpsi))
    worst = max(float(np.max(np.abs(res_r) / scale_r)), float(np.max(np.abs(res_psi) / scale_psi)))
    return CheckResult.measure(f"residuals/{params.case.label}", worst, tol, 2 * n)


def check_oracle(params: CaseParams, step: float, tol: float) -> CheckResult:
    """RK4 integration from the closed-form initial data against the closed form."""
    lo, hi = default_window(params)
    end = hi if params.shape in (Shape.SC, Shape.NC, Shape.DC) else hi - lo
    start = profile(params, 0.0)
    path = integrate_ode(params.case, params.C, float(start.r), (0.0, end), dr0=float(start.dr), step=step / params.A)
    closed = profile(params, path.s)
    diff_r = np.abs(path.r - np.asarray(closed.r)) / (1 + np.abs(np.asarray(closed.r)))
    diff_psi = np.abs(path.psi - np.asarray(closed.psi)) / (1 + np.abs(np.asarray(closed.psi)))
    worst = max(float(np.max(diff_r)), float(np.max(diff_psi)))
    return CheckResult.measure(f"oracle/{params.case.label}", worst, tol, path.s.size)


def check_quadric(params: CaseParams, n: int, rng: np.random.Generator, tol: float) -> CheckResult:
    """Quadric violation of the embedding at random θ along the profile grid."""
    s = _grid(params, n)
    theta = rng.uniform(-1.0, 1.0, size=n) * (math.pi if params.case.space.rotation is Rotation.ELLIPTIC else 1.0)
    point = embed(params, s, theta)
    scale = 1 + np.einsum("...i,...i->...", point.x, point.x)
    return CheckResult.measure(f"quadric/{params.case.label}", float(np.max(point.quadric_violation() / scale)), tol, n)


def check_curvature(params: CaseParams, h: float, tol: float) -> CheckResult:
    """Moutard-lift curvature and finite-difference curvature against the table K."""
    S, T = sample_points(params)
    lemma = gauss_from_moutard(from_profile(params, S[:, 0]))
    est = curvature_fd(lambda s, th: embed(params, s, th), S, T, h=h)
    if not np.any(est.valid):
        return CheckResult.failure(f"curvature/{params.case.label}", tol, "no valid finite-difference samples")
    K = params.case.K
    worst = max(
        float(np.max(np.abs(lemma - K))),
        float(np.max(np.abs(est.K[est.valid] - K))),
    )
    skipped = int(np.count_nonzero(~est.valid))
    if skipped:
        logger.info("curvature/%s: skipped %d singular sample(s)", params.case.label, skipped)
    return CheckResult.measure(f"curvature/{params.case.label}", worst, tol, lemma.size + int(np.count_nonzero(est.valid)))


def check_parallel(params: CaseParams, t: float, h: float, tol: float) -> CheckResult:
    """Linear Weingarten fit of the finite-difference (K, H) of a parallel offset."""
    S, T = sample_points(params)
    reference = offset_normal(params, t, S, T).x
    est = curvature_fd(lambda s, th: parallel_offset(params, t, s, th), S, T, h=h, orientation=reference)
    fit = lw_fit(est.K, est.H)
    return CheckResult.measure(f"parallel/{params.case.label} t={t!r}", fit.residual, tol, fit.n_samples)


def check_bonnet(params: CaseParams, tol: float) -> CheckResult:
    """Distance of the constant-curvature offsets found by the scan from their expected positions."""
    spherical = params.case.space.kappa == 1
    expected = [0.0, math.pi / 2, math.pi, 3 * math.pi / 2] if spherical else [0.0]
    found = bonnet_scan(params)
    name = f"parallel/bonnet {params.case.label}"
    if len(found) != len(expected):
        return CheckResult.failure(name, tol, f"found {len(found)} offsets, expected {len(expected)}")

    def distance(a: float, b: float) -> float:
        return abs(math.remainder(a - b, 2 * math.pi)) if spherical else abs(a - b)

    worst = max(min(distance(o.t, e) for o in found) for e in expected)
    return CheckResult.measure(name, worst, tol, len(found))


def check_period(K: float, n: int, tol: float, closure_tol: float) -> list[CheckResult]:
    solution = period_solve(K, n)
    s = np.linspace(0.0, solution.profile_period, 50)
    dr, dcos = solution.closure_error(s)
    label = f"K={K!r} n={n}"
    return [
        CheckResult.measure(f"period/root {label}", solution.residual, tol, 1),
        CheckResult.measure(f"period/closure {label}", max(dr, dcos), closure_tol, s.size),
    ]


# =============================================================================
# SUITE
# =============================================================================

def run_suite(config: SuiteConfig) -> VerificationReport:
    """
    Run every configured check group and collect the results.

    Usage:
        config = SuiteConfig(cases=(CaseSpec("s3", 1.0, "cn", p=0.5),))
        report = run_suite(config)
        report.passed
    """
    report = VerificationReport()
    tol = config.tolerances
    groups = set(config.checks)
    rng = np.random.default_rng(config.seed)

    if "elliptic" in groups:
        for p in config.elliptic_p:
            name = f"elliptic/p={p!r}"
            report.add(_guarded(name, tol.elliptic, lambda p=p: check_elliptic(p, tol.elliptic)))

    for spec in config.cases:
        try:
            params = spec.build()
        except ValueError as e:
            logger.warning("Case %s K=%r %s could not be built: %s", spec.space, spec.K, spec.branch, e)
            report.add(CheckResult.failure(f"case/{spec.space} K={spec.K!r} {spec.branch}", 0.0, str(e)))
            continue
        if config.perturb_amplitude:
            params = params.with_amp_scale(1 + config.perturb_amplitude)
        label = params.case.label

        if "residuals" in groups:
            report.add(_guarded(f"residuals/{label}", tol.residuals, lambda: check_residuals(params, config.n_samples, tol.residuals)))
        if "oracle" in groups:
            report.add(_guarded(f"oracle/{label}", tol.oracle, lambda: check_oracle(params, config.rk4_step, tol.oracle)))
        if "quadric" in groups:
            report.add(_guarded(f"quadric/{label}", tol.quadric, lambda: check_quadric(params, config.n_samples, rng, tol.quadric)))
        if "curvature" in groups:
            report.add(_guarded(f"curvature/{label}", tol.curvature, lambda: check_curvature(params, config.fd_step, tol.curvature)))
        if "parallel" in groups:
            for t in config.offsets:
                name = f"parallel/{label} t={t!r}"
                report.add(_guarded(name, tol.parallel, lambda t=t: check_parallel(params, t, config.fd_step, tol.parallel)))
            if config.bonnet or spec.bonnet:
                report.add(_guarded(f"parallel/bonnet {label}", tol.bonnet, lambda: check_bonnet(params, tol.bonnet)))

    if "period" in groups:
        for K, n in config.periods:
            try:
                report.extend(check_period(K, n, tol.period, tol.closure))
            except (ValueError, ArithmeticError) as e:
                logger.warning("Period check K=%r n=%d raised %s: %s", K, n, type(e).__name__, e)
                report.add(CheckResult.failure(f"period/root K={K!r} n={n}", tol.period, str(e)))

    for failure in report.failures:
        logger.warning("FAIL %s: residual %s > %g", failure.name, failure.max_residual, failure.tolerance)
    return report
