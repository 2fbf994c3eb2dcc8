"""Command-line interface.

    netrepro simulate            deterministic run -> trajectory.csv
    netrepro analyze             trajectory -> repro.csv + matrices sidecar
    netrepro simulate-stochastic chain-binomial run -> incidence/recoveries CSV
    netrepro estimate            incidence -> estimates.csv
    netrepro preset              print a shipped scenario config

Exit codes: 0 success, 2 validation failure (the error name is printed on
stderr), 3 numerical failure.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import click

from . import __version__
from . import csvio
from .config import (
    ScenarioConfig,
    build_schedule,
    config_hash,
    load_config_file,
    parse_config,
    resolve_seed,
)
from .dynamics import integrate, simulate_stochastic_sir
from .errors import ConfigError, MissingAttribution, NumericalError, ValidationError
from .estimation import discretize_serial_interval, estimate_distributed, estimate_rt
from .model import SIMPLEX_TOL
from .repro import TREND_EPSILON_ANALYTIC, analyze_trajectory
from .scenarios import PRESETS, preset_config


def _fail(exc: Exception, code: int):
    click.echo(f"{type(exc).__name__}: {exc}", err=True)
    sys.exit(code)


def handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            _fail(exc, 2)
        except NumericalError as exc:
            _fail(exc, 3)

    return wrapper


def _load_config(config_path, preset) -> ScenarioConfig:
    if (config_path is None) == (preset is None):
        raise ConfigError("pass exactly one of --config or --preset")
    raw = preset_config(preset) if preset else load_config_file(config_path)
    return parse_config(raw)


def _out_dir(cfg: ScenarioConfig, override) -> str:
    out = override or cfg.output_dir
    os.makedirs(out, exist_ok=True)
    return out


def _base_meta(cfg: ScenarioConfig, seed=None) -> dict:
    return {
        "config_hash": cfg.hash,
        "seed": "-" if seed is None else seed,
    }


@click.group()
@click.version_option(__version__, prog_name="netrepro")
def main():
    """Distributed reproduction numbers for networked SIS/SIR epidemics."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--preset", type=click.Choice(sorted(PRESETS)))
@click.option("--output-dir", type=click.Path(file_okay=False))
@click.option("--emit-plot-data", is_flag=True, help="Also write tidy long-form plot data.")
@handle_errors
def simulate(config_path, preset, output_dir, emit_plot_data):
    """Integrate the deterministic model and write trajectory.csv."""
    cfg = _load_config(config_path, preset)
    if cfg.initial is None:
        raise ConfigError("simulate needs a config with deterministic 'initial' fractions")
    if cfg.horizon is None:
        raise ConfigError("simulate needs 'horizon'")
    traj = integrate(
        cfg.model,
        cfg.initial,
        dt=cfg.dt,
        horizon=cfg.horizon,
        sample_interval=cfg.sample_interval,
    )
    out = _out_dir(cfg, output_dir)
    meta = _base_meta(cfg)
    meta.update(
        model_kind=cfg.model_kind.value,
        dt=csvio.fmt(cfg.dt),
        sample_interval=csvio.fmt(cfg.sample_interval),
        simplex_tol=csvio.fmt(SIMPLEX_TOL),
    )
    path = os.path.join(out, "trajectory.csv")
    csvio.write_trajectory_csv(path, traj, meta)
    if emit_plot_data:
        rows = (
            [float(traj.times[k]), series, i + 1, float(getattr(traj, series)[k, i])]
            for series in ("s", "x", "r")
            for k in range(len(traj))
            for i in range(traj.n)
        )
        csvio.write_plot_data_csv(os.path.join(out, "plot_data.csv"), rows, meta)
    click.echo(f"wrote {path} ({len(traj)} samples, {traj.n} communities)")


@main.command()
@click.option("--trajectory", "trajectory_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--preset", type=click.Choice(sorted(PRESETS)))
@click.option("--output-dir", type=click.Path(file_okay=False))
@click.option("--emit-plot-data", is_flag=True, help="Also write tidy long-form plot data.")
@handle_errors
def analyze(trajectory_path, config_path, preset, output_dir, emit_plot_data):
    """Compute reproduction numbers along a simulated trajectory."""
    cfg = _load_config(config_path, preset)
    traj = csvio.read_trajectory_csv(trajectory_path)
    if traj.n != cfg.model.n:
        raise ConfigError(
            f"trajectory has {traj.n} communities but the model has {cfg.model.n}"
        )
    reports = analyze_trajectory(cfg.model, traj)
    out = _out_dir(cfg, output_dir)
    meta = _base_meta(cfg)
    meta.update(
        model_kind=cfg.model_kind.value,
        trend_epsilon=csvio.fmt(TREND_EPSILON_ANALYTIC),
    )
    path = os.path.join(out, "repro.csv")
    csvio.write_repro_csv(path, reports, meta)
    csvio.write_repro_matrices_json(os.path.join(out, "repro_matrices.json"), reports, meta)
    if emit_plot_data:
        def rows():
            for rep in reports:
                for i in range(cfg.model.n):
                    yield [rep.t, "community_rbar", i + 1, float(rep.community_rbar[i])]
                yield [rep.t, "network_rt", "", rep.network_rt]
        csvio.write_plot_data_csv(os.path.join(out, "plot_repro.csv"), rows(), meta)
    click.echo(f"wrote {path} ({len(reports)} samples)")


@main.command("simulate-stochastic")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
@click.option("--preset", type=click.Choice(sorted(PRESETS)))
@click.option("--output-dir", type=click.Path(file_okay=False))
@click.option("--seed", type=int, default=None, help="Overrides the config seed.")
@click.option("--replicates", type=int, default=1, show_default=True)
@handle_errors
def simulate_stochastic(config_path, preset, output_dir, seed, replicates):
    """Run the chain-binomial SIR process and write source-attributed incidence."""
    cfg = _load_config(config_path, preset)
    if cfg.population is None:
        raise ConfigError("simulate-stochastic needs a config with 'initial_counts'")
    if replicates < 1:
        raise ConfigError("--replicates must be >= 1")
    base_seed = resolve_seed(seed, cfg)
    schedule = build_schedule(cfg)

    def run(k):
        return simulate_stochastic_sir(
            schedule,
            cfg.population,
            cfg.initial_infected,
            days=cfg.days,
            seed=base_seed + k,
            start_date=cfg.start_date,
        )

    if replicates == 1:
        results = [run(0)]
    else:
        with ThreadPoolExecutor(max_workers=min(replicates, 8)) as pool:
            results = list(pool.map(run, range(replicates)))

    out = _out_dir(cfg, output_dir)
    written = []
    for k, series in enumerate(results):
        meta = _base_meta(cfg, seed=base_seed + k)
        meta.update(
            population=";".join(str(int(v)) for v in series.population),
            days=cfg.days,
        )
        if cfg.start_date:
            meta["start_date"] = cfg.start_date
        if replicates > 1:
            meta["replicate"] = k
        suffix = f"_r{k:03d}" if replicates > 1 else ""
        inc_path = os.path.join(out, f"incidence{suffix}.csv")
        csvio.write_incidence_csv(inc_path, series, meta)
        csvio.write_recoveries_csv(os.path.join(out, f"recoveries{suffix}.csv"), series, meta)
        written.append(inc_path)
    click.echo(f"wrote {', '.join(written)}")


@main.command()
@click.option("--incidence", "incidence_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--output-dir", type=click.Path(file_okay=False), default="out", show_default=True)
@click.option("--window", type=int, default=7, show_default=True)
@click.option("--si-mean", type=float, default=4.7, show_default=True)
@click.option("--si-sd", type=float, default=2.9, show_default=True)
@click.option("--si-max-lag", type=int, default=20, show_default=True)
@click.option("--prior-shape", type=float, default=1.0, show_default=True)
@click.option("--prior-scale", type=float, default=5.0, show_default=True)
@click.option(
    "--level",
    type=click.Choice(["community", "pair", "network", "all"]),
    default="all",
    show_default=True,
)
@handle_errors
def estimate(incidence_path, output_dir, window, si_mean, si_sd, si_max_lag, prior_shape, prior_scale, level):
    """Estimate reproduction numbers from daily incidence."""
    series = csvio.read_incidence_csv(incidence_path)
    si = discretize_serial_interval(si_mean, si_sd, si_max_lag)
    if level in ("pair", "all") and not series.attributed:
        raise MissingAttribution()

    rows = []
    if level in ("pair", "all"):
        dist = estimate_distributed(series, si, window, prior_shape, prior_scale)
        if level == "all":
            rows += [(e.day, "network", None, None, e) for e in dist.network]
            for i in range(series.n):
                rows += [(e.day, "community", i + 1, None, e) for e in dist.community[i]]
        for i in range(series.n):
            for j in range(series.n):
                rows += [(e.day, "pair", i + 1, j + 1, e) for e in dist.pairs[(i, j)]]
    elif level == "network":
        est = estimate_rt(series.totals.sum(axis=1), si, window, prior_shape, prior_scale)
        rows += [(e.day, "network", None, None, e) for e in est]
    else:
        for i in range(series.n):
            est = estimate_rt(series.totals[:, i], si, window, prior_shape, prior_scale)
            rows += [(e.day, "community", i + 1, None, e) for e in est]

    os.makedirs(output_dir, exist_ok=True)
    settings = {
        "window": window,
        "si_mean": si_mean,
        "si_sd": si_sd,
        "si_max_lag": si_max_lag,
        "prior_shape": prior_shape,
        "prior_scale": prior_scale,
        "level": level,
    }
    meta = {
        "config_hash": config_hash(settings),
        "seed": "-" if series.seed is None else series.seed,
        "window": window,
        "si_mean": csvio.fmt(si_mean),
        "si_sd": csvio.fmt(si_sd),
        "si_max_lag": si_max_lag,
        "prior_shape": csvio.fmt(prior_shape),
        "prior_scale": csvio.fmt(prior_scale),
        "level": level,
    }
    path = os.path.join(output_dir, "estimates.csv")
    csvio.write_estimates_csv(path, rows, meta)
    click.echo(f"wrote {path} ({len(rows)} rows)")


@main.command()
@click.argument("name", type=click.Choice(sorted(PRESETS)))
@handle_errors
def preset(name):
    """Print a shipped scenario configuration as JSON."""
    click.echo(json.dumps(preset_config(name), indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
