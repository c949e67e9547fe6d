"""CGC Verify - independent oracles and the verification suite."""

from .curvature import CurvatureEstimate, curvature_fd
from .errors import SingularSpeedError, VerifyError
from .moutard import (
    LiftVariant,
    MoutardPolarData,
    constant_lift,
    from_path,
    from_profile,
    gauss_from_moutard,
)
from .report import CheckResult, VerificationReport
from .suite import CHECK_GROUPS, CaseSpec, SuiteConfig, Tolerances, run_suite

__all__ = [
    "CurvatureEstimate",
    "curvature_fd",
    "SingularSpeedError",
    "VerifyError",
    "LiftVariant",
    "MoutardPolarData",
    "constant_lift",
    "from_path",
    "from_profile",
    "gauss_from_moutard",
    "CheckResult",
    "VerificationReport",
    "CHECK_GROUPS",
    "CaseSpec",
    "SuiteConfig",
    "Tolerances",
    "run_suite",
]
