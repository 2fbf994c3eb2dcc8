"""Deterministic integration and stochastic simulation of networked epidemics.

The deterministic side integrates the coupled SIS/SIR rate equations

    ds_i/dt = -sum_j s_i beta_ij x_j (+ gamma_i x_i under SIS)
    dx_i/dt =  sum_j s_i beta_ij x_j - gamma_i x_i
    dr_i/dt =  gamma_i x_i            (SIR only)

with classical fixed-step RK4 (compiled kernel when available). The
stochastic side is a discrete-day chain-binomial SIR process over integer
populations that records, for every new case, which community's infectious
pool caused it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import DimensionMismatch, InvalidParameters, ScheduleGap, StepSizeUnstable
from .model import EpidemicState, ModelKind, NetworkModel, validate_state

DEFAULT_DT = 0.01
DEFAULT_SAMPLE_INTERVAL = 1.0


def vector_field_sis(model: NetworkModel, state: EpidemicState):
    """(ds/dt, dx/dt) of the networked SIS model at ``state``."""
    inf = state.s * (model.beta @ state.x)
    recov = model.gamma * state.x
    return -inf + recov, inf - recov


def vector_field_sir(model: NetworkModel, state: EpidemicState):
    """(ds/dt, dx/dt, dr/dt) of the networked SIR model at ``state``."""
    inf = state.s * (model.beta @ state.x)
    recov = model.gamma * state.x
    return -inf, inf - recov, recov


@dataclass(frozen=True)
class Trajectory:
    """Sampled deterministic trajectory with exact stored dx/dt.

    Row k of each array is the sample at ``times[k]``. Derivatives come from
    the exact vector field evaluated at the sampled states, not from finite
    differences, so threshold checks against them are exact.
    """

    times: np.ndarray
    s: np.ndarray
    x: np.ndarray
    r: np.ndarray
    dxdt: np.ndarray
    model_kind: ModelKind
    dt: float

    def __len__(self) -> int:
        return self.times.shape[0]

    @property
    def n(self) -> int:
        return self.s.shape[1]

    def state(self, k: int) -> EpidemicState:
        return validate_state(self.s[k], self.x[k], self.r[k], self.model_kind)

    def states(self) -> Iterator[EpidemicState]:
        for k in range(len(self)):
            yield self.state(k)

    @property
    def final_state(self) -> EpidemicState:
        return self.state(len(self) - 1)


def integrate(
    model: NetworkModel,
    initial_state: EpidemicState,
    dt: float = DEFAULT_DT,
    horizon: float = 100.0,
    sample_interval: Optional[float] = None,
) -> Trajectory:
    """Integrate the model with fixed-step RK4 and return sampled output.

    ``sample_interval`` controls output spacing (default 1 time unit; the
    initial and final states are always included). States are clamped to
    [0, 1] each step; a compartment escaping [-0.01, 1.01] before clamping
    raises :class:`StepSizeUnstable`.
    """
    if dt <= 0:
        raise InvalidParameters(f"dt must be positive, got {dt}")
    if horizon < dt:
        raise InvalidParameters(f"horizon {horizon} is smaller than dt {dt}")
    if initial_state.n != model.n:
        raise DimensionMismatch(model.n, initial_state.n, what="initial state")

    n_steps = max(1, int(round(horizon / dt)))
    if sample_interval is None:
        sample_interval = DEFAULT_SAMPLE_INTERVAL
    stride = max(1, int(round(sample_interval / dt)))

    kind = _kernels.KIND_SIS if initial_state.model_kind is ModelKind.SIS else _kernels.KIND_SIR
    S, X, R, DXDT, sample_steps, bad_step = _kernels.rk4_run(
        np.ascontiguousarray(model.beta),
        np.ascontiguousarray(model.gamma),
        np.ascontiguousarray(initial_state.s),
        np.ascontiguousarray(initial_state.x),
        np.ascontiguousarray(initial_state.r),
        kind,
        dt,
        n_steps,
        stride,
    )
    if bad_step >= 0:
        raise StepSizeUnstable(bad_step, bad_step * dt)

    times = np.asarray(sample_steps, dtype=float) * dt
    return Trajectory(
        times=times,
        s=S,
        x=X,
        r=R,
        dxdt=DXDT,
        model_kind=initial_state.model_kind,
        dt=dt,
    )


@dataclass(frozen=True)
class ScheduleEntry:
    """One piece of a piece-wise constant parameter schedule.

    Covers days ``from_day`` (inclusive) to ``to_day`` (exclusive).
    """

    from_day: int
    to_day: int
    model: NetworkModel


@dataclass(frozen=True)
class IncidenceSeries:
    """Daily new-case counts, attributed to the source community.

    ``cases[d, i, j]`` is the number of new infections in community i on day
    d caused by the infectious pool of community j. ``totals`` always holds
    the per-community daily totals; ``cases`` is None for series loaded from
    files without source attribution.
    """

    days: np.ndarray
    population: np.ndarray
    totals: np.ndarray
    cases: Optional[np.ndarray]
    recoveries: Optional[np.ndarray]
    seed: Optional[int]
    schedule: Optional[Sequence[ScheduleEntry]] = None
    start_date: Optional[str] = None

    @property
    def n(self) -> int:
        return self.population.shape[0]

    @property
    def n_days(self) -> int:
        return self.days.shape[0]

    @property
    def attributed(self) -> bool:
        return self.cases is not None


def _model_for_day(schedule: Sequence[ScheduleEntry], day: int) -> NetworkModel:
    for entry in schedule:
        if entry.from_day <= day < entry.to_day:
            return entry.model
    raise ScheduleGap(day)


def simulate_stochastic_sir(
    schedule,
    population,
    initial_infected,
    days: int,
    seed: int,
    start_date: Optional[str] = None,
) -> IncidenceSeries:
    """Discrete-day chain-binomial SIR run with source-attributed incidence.

    Each day, every susceptible in community i independently escapes the
    pressure of source j with probability exp(-beta_ij X_j / N_j); realized
    new infections are split over sources by a multinomial draw proportional
    to the per-source pressures, and recoveries are Binomial(X_i,
    1 - exp(-gamma_i)). ``schedule`` is a NetworkModel or a sequence of
    :class:`ScheduleEntry` covering [0, days).

    Randomness comes from numpy's PCG64 stream seeded with ``seed``: the same
    seed reproduces the same series bit for bit.
    """
    if isinstance(schedule, NetworkModel):
        schedule = [ScheduleEntry(0, days, schedule)]
    population = np.asarray(population, dtype=np.int64)
    n = population.shape[0]
    X = np.asarray(initial_infected, dtype=np.int64).copy()
    if X.shape[0] != n:
        raise DimensionMismatch(n, X.shape[0], what="initial_infected")
    if np.any(X < 0) or np.any(X > population):
        raise InvalidParameters("initial infected counts must lie in [0, N_i]")
    if np.any(population <= 0):
        raise InvalidParameters("populations must be positive")
    for day in range(days):
        if _model_for_day(schedule, day).n != n:  # also fails fast on gaps
            raise DimensionMismatch(n, _model_for_day(schedule, day).n, what="schedule model")

    rng = np.random.Generator(np.random.PCG64(seed))
    S = population - X
    R = np.zeros(n, dtype=np.int64)

    cases = np.zeros((days, n, n), dtype=np.int64)
    recoveries = np.zeros((days, n), dtype=np.int64)

    for day in range(days):
        model = _model_for_day(schedule, day)
        # per-source force of infection on each destination
        pressure = model.beta * (X / population)[np.newaxis, :]
        total_pressure = pressure.sum(axis=1)
        p_inf = -np.expm1(-total_pressure)
        new_inf = rng.binomial(S, p_inf)
        for i in range(n):
            if new_inf[i] > 0:
                pv = pressure[i] / total_pressure[i]
                cases[day, i, :] = rng.multinomial(new_inf[i], pv)
        rec = rng.binomial(X, -np.expm1(-model.gamma))
        recoveries[day] = rec

        S -= new_inf
        X += new_inf - rec
        R += rec

    return IncidenceSeries(
        days=np.arange(days, dtype=np.int64),
        population=population,
        totals=cases.sum(axis=2),
        cases=cases,
        recoveries=recoveries,
        seed=int(seed),
        schedule=tuple(schedule),
        start_date=start_date,
    )
