"""CSV/JSON output schemas and readers.

Column orders are part of the tool's contract:

    trajectory.csv   t, s_1..s_n, x_1..x_n, r_1..r_n, dxdt_1..dxdt_n
    incidence.csv    day, dest, source, new_cases      (long form)
    recoveries.csv   day, community, recoveries
    repro.csv        t, i, R0_i, Rbar_i, network_R0, network_Rt, trend
    estimates.csv    day, level, i, j, mean, ci_low, ci_high, window, prior_only

Every file starts with ``#``-prefixed metadata lines (tool version, config
hash, seed, tolerances). Values are formatted with 12 significant digits;
identical runs produce byte-identical files. Community indices in files are
1-based.
"""

from __future__ import annotations

import json
import math

import numpy as np

from . import __version__
from .dynamics import IncidenceSeries, Trajectory
from .errors import ConfigError
from .model import ModelKind


def fmt(v) -> str:
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    if isinstance(v, float):
        return format(v, ".12g")
    return str(v)


def metadata_lines(meta: dict) -> list:
    lines = [f"# netrepro {__version__}"]
    for key, value in meta.items():
        lines.append(f"# {key}={value}")
    return lines


def _write(path, header_meta: dict, columns: list, rows) -> None:
    with open(path, "w", newline="") as f:
        for line in metadata_lines(header_meta):
            f.write(line + "\n")
        f.write(",".join(columns) + "\n")
        for row in rows:
            f.write(",".join(fmt(v) for v in row) + "\n")


def read_metadata(path) -> dict:
    meta = {}
    with open(path) as f:
        for line in f:
            if not line.startswith("#"):
                break
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
    return meta


def write_trajectory_csv(path, traj: Trajectory, meta: dict) -> None:
    n = traj.n
    columns = (
        ["t"]
        + [f"s_{i}" for i in range(1, n + 1)]
        + [f"x_{i}" for i in range(1, n + 1)]
        + [f"r_{i}" for i in range(1, n + 1)]
        + [f"dxdt_{i}" for i in range(1, n + 1)]
    )
    rows = (
        [float(traj.times[k])]
        + [float(v) for v in traj.s[k]]
        + [float(v) for v in traj.x[k]]
        + [float(v) for v in traj.r[k]]
        + [float(v) for v in traj.dxdt[k]]
        for k in range(len(traj))
    )
    _write(path, meta, columns, rows)


def read_trajectory_csv(path) -> Trajectory:
    meta = read_metadata(path)
    if "model_kind" not in meta:
        raise ConfigError(f"{path} has no model_kind metadata line")
    model_kind = ModelKind(meta["model_kind"])
    dt = float(meta.get("dt", "nan"))
    data = []
    with open(path) as f:
        header = None
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                continue
            data.append([float(v) for v in line.split(",")])
    if header is None or not data:
        raise ConfigError(f"{path} contains no data rows")
    if (len(header) - 1) % 4 != 0:
        raise ConfigError(f"{path} does not match the trajectory schema")
    n = (len(header) - 1) // 4
    arr = np.asarray(data)
    return Trajectory(
        times=arr[:, 0],
        s=arr[:, 1 : 1 + n],
        x=arr[:, 1 + n : 1 + 2 * n],
        r=arr[:, 1 + 2 * n : 1 + 3 * n],
        dxdt=arr[:, 1 + 3 * n : 1 + 4 * n],
        model_kind=model_kind,
        dt=dt,
    )


def write_incidence_csv(path, series: IncidenceSeries, meta: dict) -> None:
    columns = ["day", "dest", "source", "new_cases"]

    def rows():
        for d in range(series.n_days):
            for i in range(series.n):
                if series.attributed:
                    for j in range(series.n):
                        yield [int(series.days[d]), i + 1, j + 1, int(series.cases[d, i, j])]
                else:
                    yield [int(series.days[d]), i + 1, "", int(series.totals[d, i])]

    _write(path, meta, columns, rows())


def write_recoveries_csv(path, series: IncidenceSeries, meta: dict) -> None:
    columns = ["day", "community", "recoveries"]
    rows = (
        [int(series.days[d]), i + 1, int(series.recoveries[d, i])]
        for d in range(series.n_days)
        for i in range(series.n)
    )
    _write(path, meta, columns, rows)


def read_incidence_csv(path) -> IncidenceSeries:
    """Rebuild an :class:`IncidenceSeries` from the long-form CSV.

    Rows with an empty source column yield an unattributed series (totals
    only). Populations are restored from the metadata header when present.
    """
    meta = read_metadata(path)
    records = []
    attributed = True
    with open(path) as f:
        header = None
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                if header[:4] != ["day", "dest", "source", "new_cases"]:
                    raise ConfigError(f"{path} does not match the incidence schema")
                continue
            day_s, dest_s, source_s, cases_s = line.split(",")[:4]
            if source_s == "":
                attributed = False
                records.append((int(day_s), int(dest_s), 0, int(cases_s)))
            else:
                records.append((int(day_s), int(dest_s), int(source_s), int(cases_s)))
    if not records:
        raise ConfigError(f"{path} contains no data rows")

    n = max(r[1] for r in records)
    n_days = max(r[0] for r in records) + 1
    totals = np.zeros((n_days, n), dtype=np.int64)
    cases = np.zeros((n_days, n, n), dtype=np.int64) if attributed else None
    for day, dest, source, count in records:
        totals[day, dest - 1] += count
        if attributed:
            cases[day, dest - 1, source - 1] += count

    if "population" in meta:
        population = np.asarray([int(v) for v in meta["population"].split(";")], dtype=np.int64)
    else:
        population = np.zeros(n, dtype=np.int64)
    seed = int(meta["seed"]) if meta.get("seed", "-").lstrip("-").isdigit() else None
    return IncidenceSeries(
        days=np.arange(n_days, dtype=np.int64),
        population=population,
        totals=totals,
        cases=cases,
        recoveries=None,
        seed=seed,
        start_date=meta.get("start_date"),
    )


def write_repro_csv(path, reports, meta: dict) -> None:
    columns = ["t", "i", "R0_i", "Rbar_i", "network_R0", "network_Rt", "trend"]

    def rows():
        for rep in reports:
            for i in range(len(rep.community_r0)):
                yield [
                    float(rep.t),
                    i + 1,
                    float(rep.community_r0[i]),
                    float(rep.community_rbar[i]),
                    float(rep.network_r0),
                    float(rep.network_rt),
                    rep.trends[i].value,
                ]

    _write(path, meta, columns, rows())


def _matrix_json(m: np.ndarray):
    return [[None if math.isnan(v) else round(v, 12) for v in row] for row in m.tolist()]


def write_repro_matrices_json(path, reports, meta: dict) -> None:
    """Sidecar with the full per-sample matrices (NaN encoded as null)."""
    payload = {
        "metadata": {k: str(v) for k, v in meta.items()},
        "samples": [
            {
                "t": rep.t,
                "r0_matrix": _matrix_json(rep.r0_matrix),
                "rt_matrix": _matrix_json(rep.rt_matrix),
                "infection_ratio": _matrix_json(rep.infection_ratio),
                "rbar_matrix": _matrix_json(rep.rbar_matrix),
            }
            for rep in reports
        ],
    }
    with open(path, "w") as f:
        json.dump(payload, f, indent=1, sort_keys=True)
        f.write("\n")


def write_estimates_csv(path, rows, meta: dict) -> None:
    """``rows`` are (day, level, i, j, estimate) with 1-based i/j or None."""
    columns = ["day", "level", "i", "j", "mean", "ci_low", "ci_high", "window", "prior_only"]

    def emit():
        for day, level, i, j, est in rows:
            yield [
                day,
                level,
                "" if i is None else i,
                "" if j is None else j,
                float(est.mean),
                float(est.ci_low),
                float(est.ci_high),
                est.window,
                "true" if est.prior_only else "false",
            ]

    _write(path, meta, columns, emit())


def write_plot_data_csv(path, rows, meta: dict) -> None:
    """Tidy long-form series for external plotting: t, series, community, value."""
    columns = ["t", "series", "community", "value"]
    _write(path, meta, columns, rows)
