"""CLI entry point for cgc-surfaces."""

import json
import logging
from dataclasses import replace
from pathlib import Path
from typing import Optional

import click
import numpy as np

from cgc_elliptic import RATIO_NAMES, incomplete_E, incomplete_F, incomplete_Pi, jacobi, jacobi_general
from cgc_geometry import Model, bonnet_scan, build_mesh, lw_fit, offset_normal, parallel_offset, period_solve, sample_points
from cgc_io import (
    ConfigError,
    JobConfig,
    csv_text,
    emit_csv,
    emit_mesh,
    emit_report,
    fmt,
    load_job,
    load_settings,
    load_suite_config,
)
from cgc_profiles import CaseId, CaseParams, SpaceForm, all_rows, ode_residual, profile
from cgc_verify import curvature_fd, run_suite

SETTINGS = load_settings()


def _branch_help() -> str:
    rows: dict[str, list[str]] = {}
    for (kappa, rotation, regime, branch), _ in all_rows():
        rows.setdefault(branch.value, []).append(f"{SpaceForm(kappa, rotation)} {regime.value}")
    return "Branch tag with its table rows: " + "; ".join(f"{tag} ({', '.join(found)})" for tag, found in rows.items()) + "."


BRANCH_HELP = _branch_help()


def _fail(e: Exception) -> click.ClickException:
    return click.ClickException(f"{type(e).__name__}: {e}")


def _out(path: Optional[str]) -> Optional[Path]:
    return None if path is None else SETTINGS.output_path(Path(path))


@click.group()
@click.option(
    "--log-level",
    default=SETTINGS.log_level,
    show_default=True,
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    help="Logging level (default from CGC_LOG_LEVEL).",
)
def cli(log_level: str):
    """Rotational constant Gauss curvature surfaces in S³ and H³."""
    logging.basicConfig(level=log_level.upper(), format="%(levelname)s %(name)s: %(message)s")


# =============================================================================
# CASE OPTIONS
# =============================================================================

def case_options(f):
    """Options selecting one table row; --job replaces all of them."""
    options = [
        click.option("--job", "job_path", type=click.Path(dir_okay=False), default=None, help="JSON job file (replaces the case options)."),
        click.option("--space", type=click.Choice(["s3", "h3"]), default="s3", show_default=True),
        click.option("--rotation", type=click.Choice(["elliptic", "hyperbolic", "parabolic"]), default="elliptic", show_default=True),
        click.option("--K", "K", type=float, default=None, help="Gauss curvature K."),
        click.option("--branch", default=None, help=BRANCH_HELP),
        click.option("--p", "p", type=float, default=None, help="Row parameter p (exclusive with --C)."),
        click.option("--C", "C", type=float, default=None, help="Integration constant C (exclusive with --p)."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _job(command: str, job_path, space, rotation, K, branch, p, C, **extra) -> JobConfig:
    if job_path is not None:
        try:
            job = load_job(Path(job_path))
        except ConfigError as e:
            raise _fail(e)
        if job.command != command:
            raise click.ClickException(f"Job file is a {job.command!r} job, not {command!r}")
        return job
    if K is None or branch is None:
        raise click.ClickException("Give --K and --branch, or --job")
    if (p is None) == (C is None):
        raise click.ClickException("Give exactly one of --p or --C")
    return JobConfig(command=command, space=space, rotation=rotation, K=K, branch=branch, p=p, C=C, **extra)


def _params(job: JobConfig) -> CaseParams:
    try:
        return job.params()
    except ValueError as e:
        raise _fail(e)


# =============================================================================
# SPECIAL FUNCTIONS
# =============================================================================

@cli.group("special")
def special():
    """Jacobi elliptic functions and elliptic integrals for any real or imaginary modulus."""


SPECIAL_FUNCTIONS = RATIO_NAMES + ("am", "F", "E", "Pi")


def _modulus(p: float, imaginary: bool):
    return complex(0.0, p) if imaginary else p


def _special(fn: str, s: np.ndarray, modulus, k: Optional[float]):
    if fn == "Pi":
        if k is None:
            raise click.ClickException("Pi needs the characteristic --k")
        return incomplete_Pi(k, modulus, s)
    if k is not None:
        raise click.ClickException(f"--k only applies to Pi, not {fn}")
    if fn == "am":
        return jacobi(s, modulus).am
    if fn == "F":
        return incomplete_F(s, modulus)
    if fn == "E":
        return incomplete_E(s, modulus)
    return jacobi_general(s, modulus, fn)


@special.command("eval")
@click.option("--fn", type=click.Choice(SPECIAL_FUNCTIONS), required=True, help="Ratio function, am, or the incomplete integral F, E or Pi.")
@click.option("--p", "p", type=float, required=True)
@click.option("--s", "s", type=float, multiple=True, required=True, help="Argument; repeat for several values.")
@click.option("--k", "k", type=float, default=None, help="Characteristic of Pi.")
@click.option("--imaginary", is_flag=True, default=False, help="Use the imaginary modulus i·p.")
def special_eval(fn: str, p: float, s: tuple[float, ...], k: Optional[float], imaginary: bool):
    """Print one value per --s, at full precision."""
    try:
        values = np.atleast_1d(_special(fn, np.array(s), _modulus(p, imaginary), k))
    except ValueError as e:
        raise _fail(e)
    for value in values:
        click.echo(fmt(value))


@special.command("table")
@click.option("--p", "p", type=float, required=True)
@click.option("--fn", type=click.Choice(RATIO_NAMES), default=None, help="Extra ratio column.")
@click.option("--start", type=float, default=0.0, show_default=True)
@click.option("--stop", type=float, default=1.0, show_default=True)
@click.option("--num", type=int, default=11, show_default=True)
@click.option("--out", default=None, help="CSV file (stdout if omitted).")
def special_table(p: float, fn: Optional[str], start: float, stop: float, num: int, out: Optional[str]):
    """Tabulate sn, cn, dn and am on a uniform grid, p in [0,1]."""
    s = np.linspace(start, stop, num)
    try:
        ev = jacobi(s, p)
        columns = {"s": s, "sn": ev.sn, "cn": ev.cn, "dn": ev.dn, "am": ev.am}
        if fn is not None and fn not in columns:
            columns[fn] = ev.ratio(fn)
    except ValueError as e:
        raise _fail(e)
    if out is None:
        click.echo(csv_text(columns), nl=False)
    else:
        click.echo(f"Wrote {emit_csv(columns, _out(out))}")


# =============================================================================
# PROFILES AND SURFACES
# =============================================================================

@cli.command("branches")
@click.option("--K", "K", type=float, default=None, help="Show the admissible intervals at this K.")
def branches(K: Optional[float]):
    """List every table branch tag with its row."""
    for (kappa, rotation, regime, branch), row in all_rows():
        space = SpaceForm(kappa, rotation)
        line = f"  {branch.value:10s} {str(space):15s} {regime.value:14s} {row.label}"
        if K is not None:
            try:
                case = CaseId.resolve(space, K, branch)
            except ValueError:
                continue
            if case.regime is not regime:
                continue
            line += f"  [{case.interval}]"
        click.echo(line)


@cli.command("profile")
@case_options
@click.option("--samples", "samples", type=int, default=400, show_default=True, help="Number of s samples.")
@click.option("--period-multiples", "period_multiples", type=click.FloatRange(min=0.0, min_open=True), default=1.0, show_default=True, help="Window length in profile periods.")
@click.option("--out", default=None, help="CSV file (stdout if omitted).")
def profile_cmd(job_path, space, rotation, K, branch, p, C, samples: int, period_multiples: float, out: Optional[str]):
    """Sample r, ψ, d and the ODE residuals along the profile."""
    job = _job("profile", job_path, space, rotation, K, branch, p, C, n_s=samples, period_multiples=period_multiples, out=out)
    params = _params(job)
    lo, hi = job.window(params)
    s = np.linspace(lo, hi, job.n_s)
    try:
        sample = profile(params, s)
        res_r, res_psi = ode_residual(params, s)
    except ValueError as e:
        raise _fail(e)
    columns = {"s": s, "r": sample.r, "psi": sample.psi, "d": sample.d, "res_r": res_r, "res_psi": res_psi}
    if job.out is None:
        click.echo(csv_text(columns), nl=False)
    else:
        click.echo(f"Wrote {emit_csv(columns, _out(job.out))}")


def _echo_quality(mesh) -> None:
    q = mesh.quality
    click.echo(f"  vertices            {len(mesh.vertices)} ({mesh.n_s} x {mesh.n_theta}, {mesh.model.value})")
    click.echo(f"  quadric violation   {q.max_quadric_violation:.3g}")
    if q.max_curvature_error is not None:
        click.echo(f"  |K_est - K|         {q.max_curvature_error:.3g} (K = {q.target_K!r})")
    click.echo(f"  singular / collar   {q.singular_vertices} / {q.collar_vertices}")
    click.echo(f"  fd fallback         {q.fd_fallback_vertices}")


def _mesh_job(job: JobConfig, offset: Optional[float]) -> None:
    params = _params(job)
    try:
        mesh = build_mesh(
            params,
            n_s=job.n_s,
            n_theta=job.n_theta,
            model=job.model,
            offset=offset,
            h=job.fd_step,
            collar=job.collar,
        )
    except ValueError as e:
        raise _fail(e)
    _echo_quality(mesh)
    if job.out is not None:
        click.echo(f"Wrote {emit_mesh(mesh, job.format, _out(job.out))}")


def mesh_options(f):
    options = [
        click.option("--model", type=click.Choice([m.value for m in Model]), default=None, help="Display model (stereo for S³, ball for H³)."),
        click.option("--n-s", "n_s", type=int, default=400, show_default=True),
        click.option("--n-theta", "n_theta", type=int, default=120, show_default=True),
        click.option("--format", "fmt_", type=click.Choice(["obj", "ply"]), default="obj", show_default=True),
        click.option("--out", default=None, help="Mesh file."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


@cli.command("surface")
@case_options
@mesh_options
def surface(job_path, space, rotation, K, branch, p, C, model, n_s, n_theta, fmt_, out):
    """Build the rotational surface mesh with curvature estimates."""
    job = _job("surface", job_path, space, rotation, K, branch, p, C, model=model, n_s=n_s, n_theta=n_theta, format=fmt_, out=out)
    _mesh_job(job, None)


@cli.command("parallel")
@case_options
@mesh_options
@click.option("--t", "t", type=float, default=None, help="Offset distance along the unit normal.")
@click.option("--bonnet", is_flag=True, default=False, help="Scan the parallel family for constant curvature members.")
def parallel(job_path, space, rotation, K, branch, p, C, model, n_s, n_theta, fmt_, out, t, bonnet):
    """Offset a surface along its normal and fit a linear Weingarten relation."""
    if job_path is None and t is None and not bonnet:
        raise click.ClickException("Give --t, --bonnet or --job")
    job = _job("parallel", job_path, space, rotation, K, branch, p, C, model=model, n_s=n_s, n_theta=n_theta, format=fmt_, out=out, offset=t)
    params = _params(job)

    if job.offset is not None:
        S, T = sample_points(params)
        try:
            reference = offset_normal(params, job.offset, S, T).x
            est = curvature_fd(lambda s, th: parallel_offset(params, job.offset, s, th), S, T, h=1e-3, orientation=reference)
            fit = lw_fit(est.K, est.H)
        except ValueError as e:
            raise _fail(e)
        click.echo(json.dumps({
            "t": job.offset,
            "a": fit.a, "b": fit.b, "c": fit.c,
            "residual": fit.residual,
            "tubularity": fit.tubularity,
            "degenerate": fit.degenerate,
        }))
        if job.out is not None:
            _mesh_job(job, job.offset)

    if bonnet:
        for offset in bonnet_scan(params):
            click.echo(f"  t = {fmt(offset.t)}  K = {fmt(offset.K)}  spread = {offset.spread:.3g}")


@cli.command("period")
@click.option("--K", "K", type=float, required=True, help="Negative Gauss curvature.")
@click.option("--n", "n", type=int, required=True, help="Number of profile periods per turn.")
def period(K: float, n: int):
    """Solve the closing condition of the hyperbolic-rotation K < 0 profiles."""
    try:
        solution = period_solve(K, n)
    except ValueError as e:
        raise _fail(e)
    click.echo(json.dumps({
        "K": K,
        "n": n,
        "p": solution.p.p,
        "residual": solution.residual,
        "unique": solution.unique,
        "profile_period": solution.profile_period,
    }))


# =============================================================================
# VERIFICATION
# =============================================================================

DIAG_STYLE = {
    "PASS": click.style(" PASS ", fg="white", bg="green", bold=True),
    "FAIL": click.style(" FAIL ", fg="white", bg="red", bold=True),
}


def _print_report(report) -> None:
    """Pretty-print the verification report."""
    click.echo()
    click.echo(click.style("── Verification Report ────────────────────────", bold=True))

    current_section = None
    counts = {"PASS": 0, "FAIL": 0}
    for check in report.sorted_checks():
        status = "PASS" if check.passed else "FAIL"
        counts[status] += 1

        section = check.name.split("/")[0]
        if section != current_section:
            current_section = section
            click.echo()

        residual = "n/a" if check.max_residual is None else f"{check.max_residual:.3g}"
        click.echo(f"  {DIAG_STYLE[status]}  {check.name:48s}  {residual} <= {check.tolerance:g}")

    click.echo()
    click.echo(click.style("── Summary ────────────────────────────────────", bold=True))
    parts = [click.style(f'{counts["PASS"]} passed', fg="green")]
    if counts["FAIL"]:
        parts.append(click.style(f'{counts["FAIL"]} failed', fg="red", bold=True))
    click.echo("  " + ", ".join(parts))
    click.echo()


@cli.command("verify")
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="Suite config (default CGC_SUITE_CONFIG or ./suite_config.json).")
@click.option("--out", default=None, help="JSON report file.")
@click.option("--perturb", type=float, default=None, help="Scale profile amplitudes by 1 + PERTURB (mutation run).")
@click.pass_context
def verify(ctx, config_path: Optional[str], out: Optional[str], perturb: Optional[float]):
    """Run the verification suite and print a PASS/FAIL report."""
    path = Path(config_path) if config_path else SETTINGS.suite_config
    try:
        config = load_suite_config(path)
    except ConfigError as e:
        raise _fail(e)
    if perturb is not None:
        config = replace(config, perturb_amplitude=perturb)

    report = run_suite(config)
    _print_report(report)
    if out is not None:
        click.echo(f"Wrote {emit_report(report, _out(out))}")
    if not report.passed:
        ctx.exit(1)


if __name__ == "__main__":
    cli()
