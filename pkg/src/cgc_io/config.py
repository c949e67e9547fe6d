"""
Job and suite configuration: JSON documents validated into frozen dataclasses,
plus environment settings read through python-dotenv.
"""

import json
import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Optional

from dotenv import load_dotenv

from cgc_geometry import Model
from cgc_profiles import CaseId, CaseParams, ProfileError, SpaceForm, default_window, modulus_from_C
from cgc_verify import CHECK_GROUPS, CaseSpec, SuiteConfig, Tolerances

from .errors import ConfigError

JOB_COMMANDS = ("profile", "surface", "parallel")
MESH_FORMATS = ("obj", "ply")

DEFAULT_SUITE_CONFIG = "suite_config.json"

_FLOAT_KEYS = frozenset({"K", "p", "C", "offset", "fd_step", "period_multiples"})


# =============================================================================
# ENVIRONMENT
# =============================================================================

@dataclass(frozen=True)
class Settings:
    suite_config: Path
    log_level: str
    output_dir: Optional[Path]

    def output_path(self, path: Path) -> Path:
        """Relative output paths resolve under CGC_OUTPUT_DIR when it is set."""
        path = Path(path)
        if self.output_dir is None or path.is_absolute():
            return path
        return self.output_dir / path


def load_settings() -> Settings:
    load_dotenv()
    output_dir = os.environ.get("CGC_OUTPUT_DIR")
    return Settings(
        suite_config=Path(os.environ.get("CGC_SUITE_CONFIG", str(Path.cwd() / DEFAULT_SUITE_CONFIG))),
        log_level=os.environ.get("CGC_LOG_LEVEL", "WARNING").upper(),
        output_dir=Path(output_dir) if output_dir else None,
    )


# =============================================================================
# JOB CONFIG
# =============================================================================

@dataclass(frozen=True)
class JobConfig:
    """
    One profile, surface or parallel-offset job.

    Usage:
        job = parse_config('{"command": "surface", "space": "s3", "K": 1.0, "branch": "cn", "p": 0.5}')
        params = job.params()
    """

    command: str
    space: str
    K: float
    branch: str
    rotation: str = "elliptic"
    p: Optional[float] = None
    C: Optional[float] = None
    n_s: int = 400
    n_theta: int = 120
    period_multiples: float = 1.0
    model: Optional[str] = None
    format: str = "obj"
    out: Optional[str] = None
    offset: Optional[float] = None
    fd_step: float = 1e-4
    collar: int = 2
    seed: int = 0

    @property
    def case(self) -> CaseId:
        return CaseId.resolve(SpaceForm.from_tag(self.space, self.rotation), self.K, self.branch)

    def params(self) -> CaseParams:
        return CaseParams.build(self.case, p=self.p, C=self.C)

    def window(self, params: CaseParams) -> tuple[float, float]:
        """The default sampling window stretched by ``period_multiples`` about s = 0."""
        lo, hi = default_window(params)
        return self.period_multiples * lo, self.period_multiples * hi


def _check_keys(mapping: dict, cls, where: str) -> None:
    valid = [f.name for f in fields(cls)]
    unknown = sorted(set(mapping) - set(valid))
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {unknown}. Valid keys: {valid}")


def _number(mapping: dict, key: str, kind=float) -> None:
    value = mapping.get(key)
    if value is None:
        return
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{key} must be a number, got {value!r}")
    if kind is int and int(value) != value:
        raise ConfigError(f"{key} must be an integer, got {value!r}")


def _resolve_case(space: str, rotation: str, K: float, branch: str, p: Optional[float], C: Optional[float], where: str) -> None:
    """Validate the case fields; errors name the admissible values."""
    if (p is None) == (C is None):
        raise ConfigError(f"{where}: exactly one of p or C must be given")
    try:
        case = CaseId.resolve(SpaceForm.from_tag(space, rotation), K, branch)
    except ProfileError as e:
        raise ConfigError(f"{where}: {e}") from e
    interval = case.interval
    if p is not None and case.row.free == "C":
        raise ConfigError(f"{where}: {case.label} is parametrised by C with {interval}")
    try:
        value = p if p is not None else (C if case.row.free == "C" else modulus_from_C(case, C).p)
    except ProfileError as e:
        raise ConfigError(f"{where}: C={C!r} is not admissible for {case.label}: {e}") from e
    if not interval.contains(value):
        given = "C" if p is None and case.row.free == "C" else "p"
        raise ConfigError(f"{where}: {given}={value!r} outside {interval} for {case.label}")


def from_mapping(mapping: dict[str, Any]) -> JobConfig:
    if not isinstance(mapping, dict):
        raise ConfigError(f"Job config must be a JSON object, got {type(mapping).__name__}")
    _check_keys(mapping, JobConfig, "job")
    for key in ("command", "space", "K", "branch"):
        if key not in mapping:
            raise ConfigError(f"job: missing required key {key!r}")
    if mapping["command"] not in JOB_COMMANDS:
        raise ConfigError(f"command must be one of {list(JOB_COMMANDS)}, got {mapping['command']!r}")
    for key in ("K", "p", "C", "offset", "fd_step", "period_multiples"):
        _number(mapping, key)
    for key in ("n_s", "n_theta", "collar", "seed"):
        _number(mapping, key, int)

    data = {k: (float(v) if k in _FLOAT_KEYS and v is not None else v) for k, v in mapping.items()}
    job = JobConfig(**data)
    _resolve_case(job.space, job.rotation, job.K, job.branch, job.p, job.C, "job")
    if job.n_s < 2 or job.n_theta < 2:
        raise ConfigError(f"n_s and n_theta must be >= 2, got {job.n_s}×{job.n_theta}")
    if job.period_multiples <= 0:
        raise ConfigError(f"period_multiples must be positive, got {job.period_multiples!r}")
    if job.model is not None and job.model not in [m.value for m in Model]:
        raise ConfigError(f"model must be one of {[m.value for m in Model]}, got {job.model!r}")
    if job.format not in MESH_FORMATS:
        raise ConfigError(f"format must be one of {list(MESH_FORMATS)}, got {job.format!r}")
    if job.command == "parallel" and job.offset is None:
        raise ConfigError("parallel jobs need an offset distance")
    return job


def parse_config(text: str) -> JobConfig:
    """Validate a JSON job description and apply defaults."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Job config is not valid JSON: {e}") from e
    return from_mapping(data)


def load_job(path: Path) -> JobConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Job config not found: {path}")
    return parse_config(path.read_text())


# =============================================================================
# SUITE CONFIG
# =============================================================================

def _case_spec(entry: Any, index: int) -> CaseSpec:
    where = f"cases[{index}]"
    if not isinstance(entry, dict):
        raise ConfigError(f"{where} must be an object")
    _check_keys(entry, CaseSpec, where)
    for key in ("space", "K", "branch"):
        if key not in entry:
            raise ConfigError(f"{where}: missing required key {key!r}")
    for key in ("K", "p", "C"):
        _number(entry, key)
    if not isinstance(entry.get("bonnet", False), bool):
        raise ConfigError(f"{where}: bonnet must be true or false")
    spec = CaseSpec(**{k: (float(v) if k in _FLOAT_KEYS and v is not None else v) for k, v in entry.items()})
    _resolve_case(spec.space, spec.rotation, spec.K, spec.branch, spec.p, spec.C, where)
    return spec


def suite_from_mapping(mapping: dict[str, Any]) -> SuiteConfig:
    if not isinstance(mapping, dict):
        raise ConfigError("Suite config must be a JSON object")
    _check_keys(mapping, SuiteConfig, "suite")
    data = dict(mapping)
    data["cases"] = tuple(_case_spec(entry, i) for i, entry in enumerate(mapping.get("cases", [])))
    checks = tuple(mapping.get("checks", CHECK_GROUPS))
    bad = [c for c in checks if c not in CHECK_GROUPS]
    if bad:
        raise ConfigError(f"Unknown check group(s) {bad}. Valid groups: {list(CHECK_GROUPS)}")
    data["checks"] = checks
    for key in ("elliptic_p", "offsets"):
        data[key] = tuple(float(v) for v in mapping.get(key, []))
    periods = []
    for entry in mapping.get("periods", []):
        if not isinstance(entry, dict) or set(entry) != {"K", "n"}:
            raise ConfigError(f"periods entries need exactly the keys K and n, got {entry!r}")
        periods.append((float(entry["K"]), int(entry["n"])))
    data["periods"] = tuple(periods)
    overrides = mapping.get("tolerances", {})
    _check_keys(overrides, Tolerances, "tolerances")
    data["tolerances"] = replace(Tolerances(), **{k: float(v) for k, v in overrides.items()})
    return SuiteConfig(**data)


def parse_suite_config(text: str) -> SuiteConfig:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"Suite config is not valid JSON: {e}") from e
    return suite_from_mapping(data)


def load_suite_config(path: Path) -> SuiteConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"Suite config not found: {path}")
    return parse_suite_config(path.read_text())
