import json
import math

import pytest
from click.testing import CliRunner

from cli import cli

CASE = ["--space", "s3", "--K", "1", "--branch", "cn", "--p", "0.5"]


@pytest.fixture
def runner():
    return CliRunner()


def test_help_lists_branch_tags(runner):
    result = runner.invoke(cli, ["profile", "--help"])
    assert result.exit_code == 0
    for tag in ("cn", "dn", "clifford", "hourglass", "peach"):
        assert tag in result.output
    for row in ("s3/elliptic", "h3/hyperbolic", "h3/parabolic", "K<-1", "0<K<1"):
        assert row in result.output


def test_branches_with_intervals(runner):
    result = runner.invoke(cli, ["branches", "--K", "2"])
    assert result.exit_code == 0
    assert "p in [0,1]" in result.output
    assert "clifford" not in result.output


def test_special_eval(runner):
    result = runner.invoke(cli, ["special", "eval", "--fn", "sn", "--p", "0", "--s", "0.5", "--s", "1.0"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert len(lines) == 2
    assert abs(float(lines[0]) - math.sin(0.5)) < 1e-15
    assert abs(float(lines[1]) - math.sin(1.0)) < 1e-15


def test_special_eval_integrals(runner):
    F = runner.invoke(cli, ["special", "eval", "--fn", "F", "--p", "0.5", "--s", "0.7"])
    assert F.exit_code == 0
    assert abs(float(F.output) - 0.7) < 1e-14
    Pi = runner.invoke(cli, ["special", "eval", "--fn", "Pi", "--p", "0", "--s", "0.7", "--k", "0"])
    assert Pi.exit_code == 0
    assert abs(float(Pi.output) - 0.7) < 1e-14


def test_special_eval_characteristic_only_for_pi(runner):
    missing = runner.invoke(cli, ["special", "eval", "--fn", "Pi", "--p", "0.5", "--s", "0.7"])
    assert missing.exit_code != 0
    assert "--k" in missing.output
    extra = runner.invoke(cli, ["special", "eval", "--fn", "sn", "--p", "0.5", "--s", "0.7", "--k", "0.2"])
    assert extra.exit_code != 0


def test_special_table(runner):
    result = runner.invoke(cli, ["special", "table", "--p", "0.5", "--num", "3"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "s,sn,cn,dn,am"
    assert lines[1] == "0.0,0.0,1.0,1.0,0.0"
    assert len(lines) == 4


def test_special_table_extra_ratio(runner):
    result = runner.invoke(cli, ["special", "table", "--p", "0.5", "--fn", "cd", "--num", "2"])
    assert result.output.splitlines()[0] == "s,sn,cn,dn,am,cd"


def test_profile_csv(runner):
    result = runner.invoke(cli, ["profile", *CASE, "--samples", "5"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "s,r,psi,d,res_r,res_psi"
    assert len(lines) == 6
    for line in lines[1:]:
        res_r, res_psi = (float(v) for v in line.split(",")[-2:])
        assert abs(res_r) < 1e-7 and abs(res_psi) < 1e-7


def test_profile_period_multiples(runner):
    one = runner.invoke(cli, ["profile", *CASE, "--samples", "3"])
    two = runner.invoke(cli, ["profile", *CASE, "--samples", "3", "--period-multiples", "2"])
    assert two.exit_code == 0
    s_one = float(one.output.splitlines()[-1].split(",")[0])
    s_two = float(two.output.splitlines()[-1].split(",")[0])
    assert s_two == 2 * s_one
    bad = runner.invoke(cli, ["profile", *CASE, "--period-multiples", "0"])
    assert bad.exit_code != 0



def test_profile_rejects_parameter_outside_interval(runner):
    result = runner.invoke(cli, ["profile", "--space", "s3", "--K", "1", "--branch", "cn", "--p", "1.5"])
    assert result.exit_code != 0
    assert "Error" in result.output


def test_profile_needs_one_parameter(runner):
    result = runner.invoke(cli, ["profile", "--space", "s3", "--K", "1", "--branch", "cn"])
    assert result.exit_code != 0
    assert "exactly one of --p or --C" in result.output


def test_profile_from_job_file(runner, tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({"command": "profile", "space": "h3", "K": 2.0, "branch": "cn", "p": 0.5, "n_s": 7}))
    result = runner.invoke(cli, ["profile", "--job", str(job)])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 8
    wrong = runner.invoke(cli, ["surface", "--job", str(job)])
    assert wrong.exit_code != 0
    assert "'profile' job" in wrong.output


def test_surface_writes_mesh(runner, tmp_path):
    out = tmp_path / "mesh.obj"
    result = runner.invoke(cli, ["surface", *CASE, "--n-s", "6", "--n-theta", "5", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "30 (6 x 5, stereo)" in result.output
    text = out.read_text()
    assert text.count("\nv ") == 30
    assert text.count("\nf ") == 20


def test_parallel_fit(runner):
    result = runner.invoke(cli, ["parallel", "--space", "h3", "--K", "2", "--branch", "cn", "--p", "0.5", "--t", "0.3"])
    assert result.exit_code == 0, result.output
    fit = json.loads(result.output.splitlines()[-1])
    assert fit["residual"] < 1e-6
    assert not fit["degenerate"]


def test_period(runner):
    result = runner.invoke(cli, ["period", "--K=-1", "--n", "40"])
    assert result.exit_code == 0
    data = json.loads(result.output.splitlines()[-1])
    assert data["unique"]
    assert data["residual"] < 1e-10
    assert 0 < data["p"] < math.sqrt(0.5)


def test_period_without_root(runner):
    result = runner.invoke(cli, ["period", "--K=-1", "--n", "6"])
    assert result.exit_code != 0
    assert "NoClosedCurveError" in result.output


def _suite(tmp_path) -> str:
    path = tmp_path / "suite.json"
    path.write_text(json.dumps({
        "cases": [{"space": "s3", "K": 1.0, "branch": "cn", "p": 0.5}],
        "checks": ["residuals", "quadric"],
        "n_samples": 50,
    }))
    return str(path)


def test_verify_passes(runner, tmp_path):
    out = tmp_path / "report.json"
    result = runner.invoke(cli, ["verify", "--config", _suite(tmp_path), "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "Verification Report" in result.output
    assert "2 passed" in result.output
    assert all(check["pass"] for check in json.loads(out.read_text())["checks"])


def test_verify_perturbed_fails(runner, tmp_path):
    result = runner.invoke(cli, ["verify", "--config", _suite(tmp_path), "--perturb", "1e-3"])
    assert result.exit_code == 1
    assert "failed" in result.output


def test_verify_missing_config(runner, tmp_path):
    result = runner.invoke(cli, ["verify", "--config", str(tmp_path / "nope.json")])
    assert result.exit_code != 0
    assert "not found" in result.output
