import logging
from pathlib import Path
from typing import Optional

import typer

from subnetsim.core import (
    DEFAULT_CONFIG,
    ConfigValidationError,
    ExperimentError,
    PolicyName,
    ScenarioConfig,
    apply_overrides,
    dump_config,
    load_config,
)
from subnetsim.core.experiment import PRESETS, ExperimentSpec, PointResult, SweepAxis, preset_spec
from subnetsim.core.orchestrator import Orchestrator

app = typer.Typer(help="AoI-aware radio resource allocation simulator for in-factory subnetworks")


def configure_logging(verbose: bool, debug: bool) -> None:
    level = logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def parse_sweep_values(axis: SweepAxis, raw: Optional[str]) -> list:
    """Split a comma-separated value list and convert it for the sweep axis."""
    if not raw:
        return []
    tokens = [token.strip() for token in raw.split(",") if token.strip()]
    try:
        if axis is SweepAxis.POLICY:
            return [PolicyName(token) for token in tokens]
        if axis is SweepAxis.DATASET_SIZE:
            return [int(token) for token in tokens]
        return [float(token) for token in tokens]
    except ValueError as exc:
        raise ExperimentError(f"Invalid value for sweep over {axis.value}: {exc}") from exc


def load_base_config(
    config: Optional[Path],
    seed: Optional[int],
    runs: Optional[int],
    horizon: Optional[int],
    workers: Optional[int],
) -> ScenarioConfig:
    base = load_config(config) if config else DEFAULT_CONFIG
    return apply_overrides(base, seed=seed, num_runs=runs, horizon_slots=horizon, workers=workers)


def echo_point(point: PointResult) -> None:
    summary = point.summary
    rmse = "n/a" if summary.rmse_s is None else f"{summary.rmse_s:.4g} s"
    typer.echo(
        f"  {point.label} [{point.policy.value}]: violation={summary.violation_probability:.4g}"
        f" avg_aoi={summary.avg_aoi_s:.4g} s rmse={rmse}"
    )


def execute(spec: ExperimentSpec, progress: bool) -> None:
    orchestrator = Orchestrator(progress=progress)
    try:
        orchestrator.run(spec, on_point=echo_point)
    except (ConfigValidationError, ExperimentError) as exc:
        report_errors(exc)
        raise typer.Exit(1)
    except OSError as exc:
        typer.echo(f"Cannot write results: {exc}", err=True)
        raise typer.Exit(2)
    typer.echo(f"Results saved to: {spec.output_dir}")


def report_errors(exc: Exception) -> None:
    if isinstance(exc, ConfigValidationError):
        typer.echo("Invalid configuration:", err=True)
        for issue in exc.issues:
            typer.echo(f"  {issue}", err=True)
    else:
        typer.echo(f"Error: {exc}", err=True)


@app.command()
def run(
    config: Optional[Path] = typer.Option(None, "-c", "--config", exists=True, dir_okay=False, help="Path to a YAML config file"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Override the master seed"),
    policy: Optional[list[PolicyName]] = typer.Option(None, "-p", "--policy", help="Policy to run; repeat to compare several"),
    output: Path = typer.Option(Path("results"), "-o", "--output", help="Output directory for CSV files and report"),
    trace: bool = typer.Option(False, "--trace/--no-trace", help="Also write per-slot trace CSVs"),
    sweep: SweepAxis = typer.Option(SweepAxis.NONE, "--sweep", help="Parameter to sweep"),
    values: Optional[str] = typer.Option(None, "--values", help="Comma-separated sweep values"),
    runs: Optional[int] = typer.Option(None, "--runs", help="Override the number of Monte Carlo runs"),
    horizon: Optional[int] = typer.Option(None, "--horizon", help="Override the slots per run"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Processes used for Monte Carlo runs"),
    progress: bool = typer.Option(False, "--progress", help="Show a progress bar per run"),
    verbose: bool = typer.Option(False, "-v", "--verbose", help="Log at INFO level"),
    debug: bool = typer.Option(False, "--debug", help="Log at DEBUG level"),
) -> None:
    """Run one experiment, optionally sweeping a parameter."""
    configure_logging(verbose, debug)
    try:
        base = load_base_config(config, seed, runs, horizon, workers)
        spec = ExperimentSpec(
            base_config=base,
            config_path=config,
            sweep_axis=sweep,
            sweep_values=parse_sweep_values(sweep, values),
            policies=policy or [],
            output_dir=output,
            write_trace=trace,
        )
    except (ConfigValidationError, ExperimentError) as exc:
        report_errors(exc)
        raise typer.Exit(1)

    typer.echo(f"Running experiment (seed {base.seed}, sweep {sweep.value})")
    execute(spec, progress)


@app.command()
def reproduce(
    preset: str = typer.Argument(..., help=f"Experiment preset: {', '.join(PRESETS)}"),
    config: Optional[Path] = typer.Option(None, "-c", "--config", exists=True, dir_okay=False, help="Path to a YAML config file"),
    seed: Optional[int] = typer.Option(None, "--seed", help="Override the master seed"),
    output: Path = typer.Option(Path("results"), "-o", "--output", help="Output directory for CSV files and report"),
    trace: bool = typer.Option(False, "--trace/--no-trace", help="Also write per-slot trace CSVs"),
    runs: Optional[int] = typer.Option(None, "--runs", help="Override the number of Monte Carlo runs"),
    horizon: Optional[int] = typer.Option(None, "--horizon", help="Override the slots per run"),
    workers: Optional[int] = typer.Option(None, "--workers", help="Processes used for Monte Carlo runs"),
    progress: bool = typer.Option(False, "--progress", help="Show a progress bar per run"),
    verbose: bool = typer.Option(False, "-v", "--verbose", help="Log at INFO level"),
    debug: bool = typer.Option(False, "--debug", help="Log at DEBUG level"),
) -> None:
    """Run a predefined comparison: CCDF, dataset size or exploration weight."""
    configure_logging(verbose, debug)
    try:
        base = load_base_config(config, seed, runs, horizon, workers)
        spec = preset_spec(preset, base, output, write_trace=trace)
        spec = spec.model_copy(update={"config_path": config})
    except (ConfigValidationError, ExperimentError) as exc:
        report_errors(exc)
        raise typer.Exit(1)

    typer.echo(f"Reproducing {preset} (seed {base.seed})")
    execute(spec, progress)


@app.command()
def validate(
    config: Path = typer.Argument(..., exists=True, dir_okay=False, help="Path to a YAML config file"),
) -> None:
    """Check a config file and list every violated invariant."""
    try:
        cfg = load_config(config)
    except ConfigValidationError as exc:
        report_errors(exc)
        raise typer.Exit(1)
    typer.echo(f"{config} is valid")
    typer.echo(f"  Feature dimension: {cfg.feature_dim}")
    typer.echo(f"  Arrival rate: {cfg.arrival_rate:g} packets/slot")


@app.command()
def init_config(
    path: Path = typer.Argument(Path("subnetsim.yaml"), help="Where to write the default config"),
    force: bool = typer.Option(False, "--force", help="Overwrite an existing file"),
) -> None:
    """Write the default scenario config as YAML."""
    if path.exists() and not force:
        typer.echo(f"{path} already exists; use --force to overwrite", err=True)
        raise typer.Exit(1)
    try:
        dump_config(DEFAULT_CONFIG, path)
    except OSError as exc:
        typer.echo(f"Cannot write config: {exc}", err=True)
        raise typer.Exit(2)
    typer.echo(f"Config written to: {path}")


if __name__ == "__main__":
    app()
