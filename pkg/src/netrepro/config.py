"""Run configuration: a versioned JSON document shared by all CLI commands.

A config carries the model (or a piece-wise schedule of models), exactly one
kind of initial condition (fractions for deterministic runs, integer counts
plus populations for stochastic runs), integration and estimation settings,
and the output directory. ``config_hash`` over the canonical encoding is
embedded in every output file so results can be traced to their inputs.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dynamics import ScheduleEntry
from .errors import ConfigError
from .estimation import (
    DEFAULT_PRIOR_SCALE,
    DEFAULT_PRIOR_SHAPE,
    DEFAULT_SI_MAX_LAG,
    DEFAULT_SI_MEAN,
    DEFAULT_SI_SD,
    DEFAULT_WINDOW,
)
from .model import EpidemicState, ModelKind, NetworkModel, validate_model, validate_state

SCHEMA_VERSION = 1
SEED_ENV_VAR = "NETREPRO_SEED"

ESTIMATION_DEFAULTS = {
    "window": DEFAULT_WINDOW,
    "si_mean": DEFAULT_SI_MEAN,
    "si_sd": DEFAULT_SI_SD,
    "si_max_lag": DEFAULT_SI_MAX_LAG,
    "prior_shape": DEFAULT_PRIOR_SHAPE,
    "prior_scale": DEFAULT_PRIOR_SCALE,
}


@dataclass(frozen=True)
class ScenarioConfig:
    """Parsed and validated run configuration."""

    raw: dict
    model_kind: ModelKind
    model: NetworkModel
    dt: float
    horizon: Optional[float]
    sample_interval: float
    initial: Optional[EpidemicState]
    population: Optional[np.ndarray]
    initial_infected: Optional[np.ndarray]
    days: Optional[int]
    seed: Optional[int]
    schedule: Optional[tuple]
    estimation: dict
    start_date: Optional[str]
    output_dir: str

    @property
    def hash(self) -> str:
        return config_hash(self.raw)


def config_hash(raw: dict) -> str:
    """SHA-256 over the canonical JSON encoding of a config dict."""
    canon = json.dumps(raw, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def load_config_file(path) -> dict:
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}") from e


def parse_config(raw: dict) -> ScenarioConfig:
    """Validate a config dict and build the model objects it describes."""
    if not isinstance(raw, dict):
        raise ConfigError("config must be a JSON object")
    version = raw.get("schema_version")
    if version != SCHEMA_VERSION:
        raise ConfigError(
            f"unsupported schema_version {version!r}; this tool reads version {SCHEMA_VERSION}"
        )
    unknown = set(raw) - {
        "schema_version",
        "model_kind",
        "beta",
        "gamma",
        "dt",
        "horizon",
        "sample_interval",
        "initial",
        "initial_counts",
        "days",
        "seed",
        "start_date",
        "schedule",
        "estimation",
        "output_dir",
        "name",
    }
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    try:
        model_kind = ModelKind(raw.get("model_kind", "SIR"))
    except ValueError:
        raise ConfigError(f"model_kind must be SIS or SIR, got {raw.get('model_kind')!r}")
    if "beta" not in raw or "gamma" not in raw:
        raise ConfigError("config requires 'beta' and 'gamma'")
    model = validate_model(raw["beta"], raw["gamma"])

    dt = float(raw.get("dt", 0.01))
    horizon = raw.get("horizon")
    horizon = float(horizon) if horizon is not None else None
    sample_interval = float(raw.get("sample_interval", 1.0))

    has_fractions = "initial" in raw
    has_counts = "initial_counts" in raw
    if has_fractions == has_counts:
        raise ConfigError(
            "config must carry exactly one of 'initial' (deterministic fractions) "
            "or 'initial_counts' (stochastic counts)"
        )

    initial = None
    population = None
    initial_infected = None
    if has_fractions:
        init = raw["initial"]
        if not isinstance(init, dict) or "s" not in init or "x" not in init:
            raise ConfigError("'initial' must be an object with 's', 'x' (and optional 'r')")
        initial = validate_state(
            init["s"], init["x"], init.get("r"), model_kind=model_kind
        )
        if initial.n != model.n:
            raise ConfigError("initial state length does not match the model")
    else:
        counts = raw["initial_counts"]
        if not isinstance(counts, dict) or "population" not in counts or "infected" not in counts:
            raise ConfigError("'initial_counts' must carry 'population' and 'infected'")
        population = np.asarray(counts["population"], dtype=np.int64)
        initial_infected = np.asarray(counts["infected"], dtype=np.int64)
        if population.shape != (model.n,) or initial_infected.shape != (model.n,):
            raise ConfigError("'initial_counts' vectors must match the model size")

    days = raw.get("days")
    days = int(days) if days is not None else None
    seed = raw.get("seed")
    seed = int(seed) if seed is not None else None

    schedule = None
    if raw.get("schedule") is not None:
        entries = []
        for k, entry in enumerate(raw["schedule"]):
            try:
                entries.append(
                    ScheduleEntry(
                        from_day=int(entry["from_day"]),
                        to_day=int(entry["to_day"]),
                        model=validate_model(entry["beta"], entry["gamma"]),
                    )
                )
            except KeyError as e:
                raise ConfigError(f"schedule entry {k} is missing {e}")
        schedule = tuple(entries)

    estimation = dict(ESTIMATION_DEFAULTS)
    supplied = raw.get("estimation", {})
    unknown = set(supplied) - set(estimation)
    if unknown:
        raise ConfigError(f"unknown estimation keys: {sorted(unknown)}")
    estimation.update(supplied)

    return ScenarioConfig(
        raw=raw,
        model_kind=model_kind,
        model=model,
        dt=dt,
        horizon=horizon,
        sample_interval=sample_interval,
        initial=initial,
        population=population,
        initial_infected=initial_infected,
        days=days,
        seed=seed,
        schedule=schedule,
        estimation=estimation,
        start_date=raw.get("start_date"),
        output_dir=raw.get("output_dir", "out"),
    )


def build_schedule(cfg: ScenarioConfig) -> tuple:
    """Schedule entries for a stochastic run (static model if none given)."""
    if cfg.days is None:
        raise ConfigError("stochastic runs require 'days'")
    if cfg.schedule is not None:
        return cfg.schedule
    return (ScheduleEntry(0, cfg.days, cfg.model),)


def resolve_seed(cli_seed: Optional[int], cfg: ScenarioConfig) -> int:
    """Seed precedence: CLI flag, then config, then NETREPRO_SEED."""
    if cli_seed is not None:
        return int(cli_seed)
    if cfg.seed is not None:
        return cfg.seed
    env = os.environ.get(SEED_ENV_VAR)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ConfigError(f"{SEED_ENV_VAR}={env!r} is not an integer")
    raise ConfigError(
        "no seed given: set 'seed' in the config, pass --seed, or export "
        f"{SEED_ENV_VAR}"
    )
