"""Verification report: one entry per check, serialised in a stable order."""

import json
import math
from dataclasses import dataclass, field
from typing import Optional


@dataclass(frozen=True)
class CheckResult:
    """
    Outcome of one oracle comparison.

    A non-finite residual is stored as None and always fails.
    """

    name: str
    max_residual: Optional[float]
    tolerance: float
    n_samples: int
    detail: str = ""

    @classmethod
    def measure(cls, name: str, residual: float, tolerance: float, n_samples: int, detail: str = "") -> "CheckResult":
        residual = float(residual)
        return cls(name, residual if math.isfinite(residual) else None, float(tolerance), int(n_samples), detail)

    @classmethod
    def failure(cls, name: str, tolerance: float, detail: str) -> "CheckResult":
        return cls(name, None, float(tolerance), 0, detail)

    @property
    def passed(self) -> bool:
        return self.max_residual is not None and self.max_residual <= self.tolerance

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "n_samples": self.n_samples,
        }


@dataclass
class VerificationReport:
    """
    Ordered collection of check results.

    Usage:
        report = VerificationReport()
        report.add(CheckResult.measure("quadric/S3 K=1.0 cn", 3e-16, 1e-11, 400))
        report.passed          # True
        report.to_json()
    """

    checks: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> None:
        self.checks.append(result)

    def extend(self, results: list[CheckResult]) -> None:
        self.checks.extend(results)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [check for check in self.sorted_checks() if not check.passed]

    def sorted_checks(self) -> list[CheckResult]:
        return sorted(self.checks, key=lambda check: check.name)

    def to_dict(self) -> dict:
        return {"checks": [check.to_dict() for check in self.sorted_checks()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"
