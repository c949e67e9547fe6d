import json
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cgc_geometry import embed, sample_points
from cgc_profiles import (
    H3_ELLIPTIC,
    H3_HYPERBOLIC,
    H3_PARABOLIC,
    R3,
    S3,
    CaseId,
    CaseParams,
    OdeSystem,
    default_window,
    integrate_ode,
    profile,
)
from cgc_verify import (
    CaseSpec,
    CheckResult,
    LiftVariant,
    MoutardPolarData,
    SingularSpeedError,
    SuiteConfig,
    Tolerances,
    VerificationReport,
    VerifyError,
    constant_lift,
    curvature_fd,
    from_path,
    from_profile,
    gauss_from_moutard,
    run_suite,
)


def _params(space, K, branch, p=None, C=None) -> CaseParams:
    return CaseParams.build(CaseId.resolve(space, K, branch), p=p, C=C)


def _surface(params: CaseParams):
    return lambda s, th: embed(params, s, th)


# =============================================================================
# FINITE-DIFFERENCE CURVATURE
# =============================================================================

def test_fd_error_is_second_order():
    params = _params(S3, 1.0, "dn", p=0.5)
    S, T = sample_points(params)
    coarse = curvature_fd(_surface(params), S, T, h=1e-2, richardson=False)
    fine = curvature_fd(_surface(params), S, T, h=5e-3, richardson=False)
    ratio = np.max(np.abs(coarse.K - 1.0)) / np.max(np.abs(fine.K - 1.0))
    assert 3.0 < ratio < 5.0
    assert np.all(np.isnan(coarse.K_err))


@pytest.mark.parametrize(
    "space, K, branch, p",
    [
        (S3, 1.0, "cn", 0.5),
        (S3, -2.0, "dn", 0.4),
        (H3_ELLIPTIC, 2.0, "cn", 0.5),
        (H3_HYPERBOLIC, -1.0, "dn", 0.5),
    ],
)
def test_fd_curvature_matches_table(space, K, branch, p):
    params = _params(space, K, branch, p=p)
    S, T = sample_points(params)
    est = curvature_fd(_surface(params), S, T)
    assert est.valid.all()
    assert np.max(np.abs(est.K - K)) < 1e-4
    assert np.max(est.K_err) < 1e-4


def test_fd_orientation_flips_mean_curvature():
    params = _params(H3_ELLIPTIC, 2.0, "cn", p=0.5)
    S, T = sample_points(params)
    est = curvature_fd(_surface(params), S, T, h=1e-3)
    flipped = curvature_fd(_surface(params), S, T, h=1e-3, orientation=-est.normal)
    assert_allclose(flipped.K, est.K, atol=1e-9)
    assert_allclose(flipped.H, -est.H, atol=1e-9)


def test_fd_marks_refused_points_invalid():
    params = _params(S3, 1.0, "dn", p=0.5)

    def sampler(s, th):
        if np.any(np.asarray(s) > 0.5):
            raise ValueError("outside")
        return embed(params, s, th)

    s = np.array([0.1, 0.2, 0.9])
    est = curvature_fd(sampler, s, np.full(3, 0.3), h=1e-3)
    assert est.valid.tolist() == [True, True, False]
    assert np.isnan(est.K[2])
    assert_allclose(est.K[:2], 1.0, atol=1e-6)


def test_fd_rejects_points_with_large_richardson_error():
    params = _params(S3, 1.0, "dn", p=0.5)
    hi = default_window(params)[1]
    est = curvature_fd(_surface(params), np.array([0.3 * hi, hi]), np.full(2, 0.4))
    assert est.valid.tolist() == [True, False]
    assert np.isnan(est.K[1]) and np.isnan(est.K_err[1])
    assert est.K_err[0] <= 1e-3 * (1 + abs(est.K[0]))


def test_fd_never_raises_when_every_point_fails():
    def sampler(s, th):
        raise ValueError("nothing here")

    est = curvature_fd(sampler, np.zeros(4), np.zeros(4))
    assert not est.valid.any()
    assert np.all(np.isnan(est.K))


# =============================================================================
# MOUTARD LIFT
# =============================================================================

def test_clifford_torus_has_curvature_minus_one():
    assert_allclose(gauss_from_moutard(constant_lift(S3, 0.6, 2.0, n=3)), -1.0, atol=1e-14)


def test_flat_torus_in_h3():
    assert_allclose(gauss_from_moutard(constant_lift(H3_ELLIPTIC, 0.5, 1.3)), 1.0, atol=1e-14)


def test_horosphere_and_cylinder():
    assert_allclose(gauss_from_moutard(constant_lift(H3_PARABOLIC, 0.7, 1.1)), 1.0, atol=1e-14)
    data = constant_lift(R3, 2.0, 0.7)
    assert data.variant is LiftVariant.EUCLIDEAN
    assert_allclose(gauss_from_moutard(data), 0.0, atol=1e-14)


def test_parabolic_exponential_profile():
    a = 0.8
    t = np.linspace(-1.0, 1.0, 9)
    e = np.exp(-t)
    data = MoutardPolarData(
        LiftVariant.PARABOLIC, -1, 0, 0, t,
        R=-e, dR=e, ddR=-e, D=np.full_like(t, np.nan), dD=np.full_like(t, np.nan), ddD=np.full_like(t, np.nan),
        dpsi=a * e, ddpsi=-a * e,
    )
    assert_allclose(gauss_from_moutard(data), a * a / (1 + a * a), rtol=1e-13)


def test_vanishing_speed_raises():
    with pytest.raises(SingularSpeedError) as info:
        gauss_from_moutard(constant_lift(S3, 0.6, 0.0))
    assert isinstance(info.value, VerifyError)


@pytest.mark.parametrize(
    "space, K, branch, value",
    [
        (S3, 1.0, "cn", 0.5),
        (S3, -2.0, "cn", 0.6),
        (S3, -0.5, "cd1", 0.5),
        (H3_ELLIPTIC, 2.0, "cn", 0.5),
        (H3_ELLIPTIC, -1.0, "dn", 0.85),
        (H3_HYPERBOLIC, -1.0, "dn", 0.5),
        (H3_PARABOLIC, 2.0, "dn", 0.5),
    ],
)
def test_moutard_curvature_of_table_profiles(space, K, branch, value):
    case = CaseId.resolve(space, K, branch)
    params = CaseParams.build(case, **{case.row.free: value})
    S, _ = sample_points(params)
    assert_allclose(gauss_from_moutard(from_profile(params, S[:, 0])), K, atol=1e-7)


def test_moutard_along_rk4_path_in_s3():
    params = _params(S3, 1.0, "cn", p=0.5)
    start = profile(params, 0.0)
    hi = default_window(params)[1]
    path = integrate_ode(params.case, params.C, float(start.r), (0.0, 0.3 * hi), dr0=float(start.dr), step=1e-4)
    system = OdeSystem(S3, 1.0, params.C)
    K = gauss_from_moutard(from_path(path, system))
    assert np.max(np.abs(K[1:] - 1.0)) < 1e-6


def test_moutard_along_rk4_path_in_r3():
    K0, C = 1.0, 0.5
    path = integrate_ode(R3, C, 0.4, (0.0, 0.5), K=K0, step=1e-4)
    data = from_path(path, OdeSystem(R3, K0, C))
    assert data.variant is LiftVariant.EUCLIDEAN
    assert_allclose(gauss_from_moutard(data), K0, atol=1e-8)


# =============================================================================
# REPORT
# =============================================================================

def test_check_result_pass_and_fail():
    assert CheckResult.measure("a", 1e-12, 1e-11, 10).passed
    assert not CheckResult.measure("a", 1e-10, 1e-11, 10).passed
    nan = CheckResult.measure("a", float("nan"), 1e-11, 10)
    assert nan.max_residual is None
    assert not nan.passed
    assert not CheckResult.failure("b", 1e-3, "boom").passed


def test_report_json_is_sorted():
    report = VerificationReport()
    report.add(CheckResult.measure("quadric/x", 1e-16, 1e-11, 4))
    report.add(CheckResult.measure("elliptic/p=0.5", 2e-15, 1e-11, 206))
    text = report.to_json()
    assert text.endswith("\n")
    data = json.loads(text)
    assert [c["name"] for c in data["checks"]] == ["elliptic/p=0.5", "quadric/x"]
    assert set(data["checks"][0]) == {"name", "max_residual", "tolerance", "pass", "n_samples"}
    assert data["checks"][1]["pass"] is True


# =============================================================================
# SUITE
# =============================================================================

def test_empty_suite_passes():
    report = run_suite(SuiteConfig())
    assert report.checks == []
    assert report.passed


def test_small_suite_passes():
    config = SuiteConfig(cases=(CaseSpec("s3", 1.0, "cn", p=0.5),), elliptic_p=(0.5,), n_samples=50)
    report = run_suite(config)
    names = [c.name for c in report.sorted_checks()]
    assert len(names) == 5
    assert any(name.startswith("curvature/") for name in names)
    assert report.passed, [c.to_dict() for c in report.failures]


def test_perturbed_amplitude_fails_residuals():
    config = SuiteConfig(
        cases=(CaseSpec("s3", 1.0, "cn", p=0.5),),
        checks=("residuals",),
        perturb_amplitude=1e-3,
    )
    report = run_suite(config)
    assert not report.passed
    assert report.failures[0].name.startswith("residuals/")


def test_unbuildable_case_is_reported():
    report = run_suite(SuiteConfig(cases=(CaseSpec("s3", 1.0, "cn", p=1.5),)))
    assert len(report.checks) == 1
    assert report.checks[0].name.startswith("case/")
    assert not report.passed


def test_period_group():
    report = run_suite(SuiteConfig(periods=((-1.0, 40), (-1.0, 6)), checks=("period",)))
    by_name = {c.name: c for c in report.checks}
    assert by_name["period/root K=-1.0 n=40"].passed
    assert by_name["period/closure K=-1.0 n=40"].passed
    assert not by_name["period/root K=-1.0 n=6"].passed


def test_tolerance_override():
    tight = Tolerances(quadric=0.0)
    config = SuiteConfig(cases=(CaseSpec("h3", 2.0, "cn", p=0.5),), checks=("quadric",), tolerances=tight, n_samples=50)
    report = run_suite(config)
    assert report.checks[0].tolerance == 0.0
    assert math.isfinite(report.checks[0].max_residual)


def test_parallel_group_uses_transported_normal():
    config = SuiteConfig(cases=(CaseSpec("h3", 2.0, "cn", p=0.5),), checks=("parallel",), offsets=(0.3,))
    report = run_suite(config)
    assert [c.name for c in report.checks] == ["parallel/h3/elliptic K=2.0 cn t=0.3"]
    assert report.passed, [c.to_dict() for c in report.failures]


def test_bonnet_scan_runs_per_case():
    config = SuiteConfig(
        cases=(CaseSpec("h3", 2.0, "cn", p=0.5, bonnet=True), CaseSpec("h3", 2.0, "dn", p=0.85)),
        checks=("parallel",),
    )
    report = run_suite(config)
    names = [c.name for c in report.checks]
    assert len(names) == 1
    assert names[0].startswith("parallel/bonnet h3/elliptic K=2.0 cn")
    assert report.passed, [c.to_dict() for c in report.failures]
