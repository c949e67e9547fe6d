import json

import numpy as np
import pytest
from numpy.testing import assert_allclose

from cgc_geometry import build_mesh
from cgc_io import (
    ConfigError,
    OutputError,
    csv_text,
    emit_csv,
    emit_mesh,
    emit_report,
    fmt,
    load_job,
    load_settings,
    obj_text,
    parse_config,
    parse_suite_config,
    ply_text,
    read_csv,
)
from cgc_profiles import S3, CaseId, CaseParams, default_window
from cgc_verify import CheckResult, VerificationReport


def _job(**overrides) -> str:
    data = {"command": "surface", "space": "s3", "K": 1.0, "branch": "cn", "p": 0.5}
    data.update(overrides)
    return json.dumps({k: v for k, v in data.items() if v is not None})


@pytest.fixture
def mesh():
    params = CaseParams.build(CaseId.resolve(S3, 1.0, "dn"), p=0.5)
    return build_mesh(params, n_s=2, n_theta=2, curvature=False)


# =============================================================================
# JOB CONFIG
# =============================================================================

def test_job_defaults():
    job = parse_config(_job())
    assert job.n_s == 400
    assert job.n_theta == 120
    assert job.format == "obj"
    assert job.model is None
    assert job.fd_step == 1e-4
    assert job.params().modulus.p == 0.5


def test_window_scales_with_period_multiples():
    job = parse_config(_job(command="profile", period_multiples=2))
    params = job.params()
    lo, hi = default_window(params)
    assert job.period_multiples == 2.0
    assert job.window(params) == (2 * lo, 2 * hi)


def test_integer_K_becomes_float():
    job = parse_config(_job(K=1))
    assert isinstance(job.K, float)


def test_parameter_outside_interval_names_it():
    with pytest.raises(ConfigError, match=r"\[0,1\]"):
        parse_config(_job(p=1.5))


def test_p_and_C_are_exclusive():
    with pytest.raises(ConfigError, match="exactly one"):
        parse_config(_job(C=0.3))
    with pytest.raises(ConfigError, match="exactly one"):
        parse_config(_job(p=None))


def test_unknown_keys_are_listed():
    with pytest.raises(ConfigError, match="colour") as info:
        parse_config(_job(colour="red"))
    assert "n_theta" in str(info.value)


@pytest.mark.parametrize(
    "overrides, message",
    [
        (dict(command="draw"), "command"),
        (dict(space="e4"), "Unknown space"),
        (dict(branch="sn"), "cn"),
        (dict(format="stl"), "format"),
        (dict(model="klein"), "model"),
        (dict(n_s=1), "n_s"),
        (dict(n_theta=2.5), "integer"),
        (dict(K="one"), "number"),
        (dict(command="parallel"), "offset"),
        (dict(period_multiples=0), "period_multiples"),
        (dict(period_multiples="two"), "number"),
    ],
)
def test_job_validation(overrides, message):
    with pytest.raises(ConfigError, match=message):
        parse_config(_job(**overrides))


def test_invalid_json():
    with pytest.raises(ConfigError, match="not valid JSON"):
        parse_config("{command: surface")


def test_load_job(tmp_path):
    path = tmp_path / "job.json"
    path.write_text(_job(command="parallel", offset=0.4))
    assert load_job(path).offset == 0.4
    with pytest.raises(ConfigError, match="not found"):
        load_job(tmp_path / "missing.json")


def test_settings_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv("CGC_LOG_LEVEL", "debug")
    monkeypatch.setenv("CGC_OUTPUT_DIR", str(tmp_path))
    settings = load_settings()
    assert settings.log_level == "DEBUG"
    assert settings.output_path("mesh.obj") == tmp_path / "mesh.obj"
    assert settings.output_path(tmp_path / "x.csv") == tmp_path / "x.csv"


# =============================================================================
# SUITE CONFIG
# =============================================================================

def test_suite_config_parses():
    config = parse_suite_config(json.dumps({
        "cases": [{"space": "h3", "K": 2, "branch": "cn", "p": 0.5, "bonnet": True}],
        "elliptic_p": [0, 0.5],
        "periods": [{"K": -1, "n": 40}],
        "tolerances": {"curvature": 1e-3},
    }))
    assert config.cases[0].K == 2.0
    assert config.cases[0].bonnet is True
    assert config.elliptic_p == (0.0, 0.5)
    assert config.periods == ((-1.0, 40),)
    assert config.tolerances.curvature == 1e-3
    assert config.tolerances.quadric == 1e-11


@pytest.mark.parametrize(
    "document, message",
    [
        ({"checks": ["speed"]}, "speed"),
        ({"periods": [{"K": -1}]}, "periods"),
        ({"tolerances": {"closeness": 1.0}}, "closeness"),
        ({"cases": [{"space": "s3", "K": 1.0, "branch": "cn", "p": 2.0}]}, r"cases\[0\]"),
        ({"cases": [{"space": "s3", "K": 1.0, "p": 0.5}]}, "branch"),
        ({"cases": [{"space": "s3", "K": 1.0, "branch": "cn", "p": 0.5, "bonnet": "yes"}]}, "bonnet"),
    ],
)
def test_suite_config_validation(document, message):
    with pytest.raises(ConfigError, match=message):
        parse_suite_config(json.dumps(document))


# =============================================================================
# WRITERS
# =============================================================================

def test_fmt_round_trips():
    for x in (0.1, 1 / 3, -2.5e-300, 123456789.123):
        assert float(fmt(x)) == x


def test_csv_round_trip(tmp_path):
    s = np.linspace(0.0, 1.0, 5)
    path = emit_csv({"s": s, "r": np.cos(s)}, tmp_path / "out" / "profile.csv")
    assert path.read_text().splitlines()[0] == "s,r"
    data = read_csv(path)
    assert list(data) == ["s", "r"]
    assert_allclose(data["r"], np.cos(s), rtol=0, atol=0)


def test_csv_rejects_ragged_columns():
    with pytest.raises(OutputError):
        csv_text({"a": [1.0, 2.0], "b": [1.0]})


def test_obj_two_by_two(mesh):
    lines = obj_text(mesh).splitlines()
    assert lines[0].startswith("#")
    assert sum(line.startswith("v ") for line in lines) == 4
    assert [line for line in lines if line.startswith("f ")] == ["f 1 3 4 2"]


def test_ply_header(mesh):
    text = ply_text(mesh)
    header, body = text.split("end_header\n")
    assert "element vertex 4" in header
    assert "element face 1" in header
    assert "property double K_int" in header
    assert "property double w" not in header
    assert body.splitlines()[-1] == "4 0 2 3 1"


def test_emit_mesh(mesh, tmp_path):
    path = emit_mesh(mesh, "ply", tmp_path / "mesh.ply")
    assert path.read_text().startswith("ply\n")
    with pytest.raises(OutputError, match="stl"):
        emit_mesh(mesh, "stl", tmp_path / "mesh.stl")


def test_emit_report(tmp_path):
    report = VerificationReport([CheckResult.measure("quadric/x", 1e-16, 1e-11, 4)])
    path = emit_report(report, tmp_path / "report.json")
    assert json.loads(path.read_text())["checks"][0]["pass"] is True


def test_unwritable_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(OutputError, match="Cannot write"):
        emit_csv({"s": [0.0]}, blocker / "sub" / "x.csv")
