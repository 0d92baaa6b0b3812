"""Command-line surface: ``python -m app <command> ...``.

Output goes to stdout (or ``--output FILE``); logs go to stderr. Exit codes:
0 success, 2 usage error, 3 domain error.
"""
from __future__ import annotations

import functools
import io
import json
import logging
import math
from typing import Any, Callable, List, Optional

import click
import numpy as np
import pandas as pd

from app.core.config import settings
from app.core.errors import PauliGeometryError
from app.core.logging import configure_logging
from app.models.types import Family, LdivMode, Method, PauliEigenvalues, PauliProbabilities, RegionId
from app.services import channels, charts, conjecture, cross_sections, dynamics, regions, volumes
from app.services.sampling import MAX_SEED

log = logging.getLogger("cli")


class DomainError(click.ClickException):
    exit_code = 3


class FloatList(click.ParamType):
    name = "floats"

    def __init__(self, size: int) -> None:
        self.size = size

    def convert(self, value: Any, param, ctx) -> List[float]:
        if isinstance(value, (list, tuple)):
            return [float(v) for v in value]
        try:
            out = [float(v) for v in str(value).split(",")]
        except ValueError:
            self.fail(f"{value!r} is not a comma-separated list of numbers", param, ctx)
        if len(out) != self.size:
            self.fail(f"expected {self.size} comma-separated numbers, got {len(out)}", param, ctx)
        if not all(math.isfinite(v) for v in out):
            self.fail(f"{value!r} has non-finite entries", param, ctx)
        return out


def _choice(enum) -> click.Choice:
    return click.Choice([m.value for m in enum])


family_option = click.option("--family", required=True, type=_choice(Family), help="Channel family.")
mode_option = click.option(
    "--ldiv-mode", "ldiv_mode", default=LdivMode.LITERAL.value, show_default=True, type=_choice(LdivMode)
)
method_option = click.option(
    "--method", default=None, type=_choice(Method), help="exact or mc; defaults to exact where supported."
)
samples_option = click.option(
    "--samples", default=None, type=click.IntRange(min=1), help=f"MC samples [default: {settings.MC_DEFAULT_SAMPLES}]"
)
seed_option = click.option(
    "--seed", default=None, type=click.IntRange(0, MAX_SEED), help=f"MC seed [default: {settings.MC_DEFAULT_SEED}]"
)
output_option = click.option("--output", type=click.Path(dir_okay=False, writable=True), default=None)


def format_option(default: str = "json"):
    return click.option("--format", "fmt", default=default, show_default=True, type=click.Choice(["json", "csv"]))


def domain_errors(fn: Callable) -> Callable:
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PauliGeometryError as exc:
            log.info("domain error", extra={"code": exc.code})
            raise DomainError(exc.message) from exc

    return wrapper


def _emit(text: str, output: Optional[str]) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _json(payload: Any) -> str:
    return json.dumps(payload, indent=2)


def _csv(records: List[dict]) -> str:
    buf = io.StringIO()
    pd.DataFrame(records).to_csv(buf, index=False, float_format="%.15g", lineterminator="\n")
    return buf.getvalue()


def _flat(payload: dict) -> dict:
    out = {}
    for key, value in payload.items():
        if isinstance(value, (list, tuple)):
            value = ";".join(str(v) for v in value)
        out[key] = value
    return out


def _render(payload: dict, fmt: str) -> str:
    return _json(payload) if fmt == "json" else _csv([_flat(payload)])


@click.group()
@click.option("--log-level", default=None, help="Logging level for stderr [default: PAULI_LOG_LEVEL].")
def cli(log_level: Optional[str]) -> None:
    """Geometry of qubit Pauli maps."""
    configure_logging(log_level)


@cli.command()
@click.option("--eigenvalues", type=FloatList(3), default=None, help="lambda1,lambda2,lambda3")
@click.option("--probabilities", type=FloatList(4), default=None, help="p0,p1,p2,p3")
@format_option()
@output_option
@domain_errors
def classify(eigenvalues, probabilities, fmt, output):
    """Classify a Pauli map."""
    if (eigenvalues is None) == (probabilities is None):
        raise click.UsageError("give exactly one of --eigenvalues or --probabilities")
    if eigenvalues is not None:
        e = PauliEigenvalues.of(eigenvalues)
    else:
        e = channels.eigenvalues_from_probabilities(PauliProbabilities.of(probabilities))
    _emit(_render(channels.classify(e).model_dump(mode="json"), fmt), output)


@cli.command()
@family_option
@click.option("--region", required=True, type=_choice(RegionId))
@mode_option
@method_option
@samples_option
@seed_option
@format_option()
@output_option
@domain_errors
def volume(family, region, ldiv_mode, method, samples, seed, fmt, output):
    """Hilbert-Schmidt volume of a region within a family."""
    result = volumes.volume(Family(family), RegionId(region), method, samples, seed, LdivMode(ldiv_mode))
    _emit(_render(result.model_dump(mode="json"), fmt), output)


@cli.command()
@family_option
@click.option("--num", required=True, type=_choice(RegionId), help="Numerator region.")
@click.option("--den", required=True, type=_choice(RegionId), help="Denominator region.")
@mode_option
@method_option
@samples_option
@seed_option
@format_option()
@output_option
@domain_errors
def ratio(family, num, den, ldiv_mode, method, samples, seed, fmt, output):
    """Volume ratio V(num)/V(den)."""
    result = volumes.volume_ratio(
        Family(family), RegionId(num), RegionId(den), method, samples, seed, LdivMode(ldiv_mode)
    )
    _emit(_render(result.model_dump(mode="json"), fmt), output)


@cli.command("charts")
@mode_option
@format_option(default="csv")
@output_option
@domain_errors
def charts_cmd(ldiv_mode, fmt, output):
    """Relative volumes of every family with the published values."""
    rows = charts.chart_data(LdivMode(ldiv_mode))
    if fmt == "csv":
        _emit(charts.to_csv(rows), output)
    else:
        _emit(_json([row.model_dump(mode="json") for row in rows]), output)


@cli.command("cross-section")
@family_option
@output_option
@domain_errors
def cross_section_cmd(family, output):
    """CPT and CPT-with-TLG outlines in eigenvalue space."""
    sections = cross_sections.cross_section(Family(family))
    _emit(_json([s.model_dump(mode="json") for s in sections]), output)


@cli.command("trajectory")
@click.option("--rates", required=True, help='Three rates "g1;g2;g3": expressions in t, numbers or steps:t0=v0,...')
@click.option("--t-max", "t_max", type=click.FloatRange(min=0.0, min_open=True), default=1.0, show_default=True)
@click.option("--steps", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--tol", type=click.FloatRange(min=0.0, min_open=True), default=None, help="Quadrature tolerance.")
@format_option(default="csv")
@output_option
@domain_errors
def trajectory_cmd(rates, t_max, steps, tol, fmt, output):
    """Eigenvalue trajectory of a time-local Pauli generator."""
    spec = dynamics.parse_rates(rates)
    grid = np.linspace(0.0, t_max, steps + 1)
    traj = dynamics.trajectory(spec, grid, tol)
    if fmt == "csv":
        _emit(dynamics.trajectory_csv(traj), output)
    else:
        _emit(_json(traj.model_dump(mode="json")), output)


@cli.command("rates")
@click.option("--eigenvalues", required=True, type=FloatList(3), help="lambda1,lambda2,lambda3")
@format_option()
@output_option
@domain_errors
def rates_cmd(eigenvalues, fmt, output):
    """Integrated rates that reach a target channel."""
    e = PauliEigenvalues.of(eigenvalues)
    big_gamma = dynamics.tlg_rates_for_target(e)
    payload = {
        "eigenvalues": list(e.as_tuple()),
        "integrated_rates": list(big_gamma),
        "nonnegative": all(g >= -settings.PREDICATE_TOL for g in big_gamma),
    }
    _emit(_render(payload, fmt), output)


@cli.command("regions")
@family_option
@click.option("--region", required=True, type=_choice(RegionId))
@mode_option
@output_option
@domain_errors
def regions_cmd(family, region, ldiv_mode, output):
    """Symbolic cells of a region in the family's parameters."""
    cs = regions.region_constraints(Family(family), RegionId(region), LdivMode(ldiv_mode))
    _emit(_json(cs.to_dict()), output)


@cli.command("conjecture")
@click.option("--samples", type=click.IntRange(min=1), default=1_000_000, show_default=True)
@click.option("--seed", type=click.IntRange(0, MAX_SEED), default=0, show_default=True)
@output_option
@domain_errors
def conjecture_cmd(samples, seed, output):
    """Compare L-divisibility with CP-divisibility plus TLG on sampled channels."""
    report = conjecture.conjecture_report(samples, seed)
    _emit(_json(report.model_dump(mode="json")), output)


def main() -> None:
    cli(prog_name="pauli-geometry")


if __name__ == "__main__":
    main()
