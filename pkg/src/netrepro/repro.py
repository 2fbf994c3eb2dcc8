"""Distributed, community, and network reproduction numbers.

The per-pair quantities decompose infection flow between communities:

    basic        R0_ij   = beta_ij / gamma_i
    pseudo-eff.  Rt_ij   = s_i * beta_ij / gamma_i
    ratio        I_ij    = x_j / x_i
    effective    Rbar_ij = Rt_ij * I_ij

Community-level numbers are the row sums R0_i = sum_j R0_ij and
Rbar_i = sum_j Rt_ij * I_ij; the latter crosses 1 exactly when dx_i/dt
crosses 0, which is the thresholding property everything downstream uses.
Network-level numbers are the spectral radii of the matrices [R0_ij] and
[Rt_ij] (the next-generation matrix and its susceptible-scaled version).

Communities with no infected population have no defined ratio or effective
number; those entries surface as NaN and their trend as ``Trend.UNDEFINED``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .dynamics import Trajectory
from .errors import ZeroInfection
from .model import EpidemicState, NetworkModel
from .spectral import spectral_radius

TREND_EPSILON_ANALYTIC = 1e-9
TREND_EPSILON_ESTIMATED = 0.05
ZERO_INFECTION_TOL = 1e-12


class Trend(str, Enum):
    INCREASING = "Increasing"
    DECREASING = "Decreasing"
    STATIONARY = "Stationary"
    UNDEFINED = "Undefined"


@dataclass(frozen=True)
class ReproReport:
    """Every reproduction-number object evaluated at one state."""

    t: float
    r0_matrix: np.ndarray
    rt_matrix: np.ndarray
    infection_ratio: np.ndarray
    rbar_matrix: np.ndarray
    community_r0: np.ndarray
    community_rbar: np.ndarray
    network_r0: float
    network_rt: float
    trends: tuple


def distributed_basic(model: NetworkModel) -> np.ndarray:
    """Matrix of basic reproduction numbers R0_ij = beta_ij / gamma_i."""
    return model.beta / model.gamma[:, np.newaxis]


def distributed_effective(model: NetworkModel, state: EpidemicState) -> np.ndarray:
    """Matrix of pseudo-effective numbers Rt_ij = s_i * beta_ij / gamma_i."""
    return state.s[:, np.newaxis] * distributed_basic(model)


def infection_ratios(x) -> np.ndarray:
    """Matrix of infection ratios I_ij = x_j / x_i; requires every x_i > 0."""
    x = np.asarray(x, dtype=float)
    zero = np.flatnonzero(x <= 0)
    if zero.size:
        raise ZeroInfection(int(zero[0]) + 1)
    return x[np.newaxis, :] / x[:, np.newaxis]


def community_numbers(model: NetworkModel, state: EpidemicState, zero_tol: float = ZERO_INFECTION_TOL):
    """Per-community (R0_i, Rbar_i) row sums.

    Rbar_i is computed as s_i (beta x)_i / (gamma_i x_i), which equals
    sum_j Rt_ij I_ij wherever the ratios are defined and needs only x_i > 0.
    Communities with x_i <= ``zero_tol`` get NaN.
    """
    r0_i = distributed_basic(model).sum(axis=1)
    x = state.x
    rbar_i = np.full(model.n, np.nan)
    alive = x > zero_tol
    if alive.any():
        flow = state.s * (model.beta @ x)
        rbar_i[alive] = flow[alive] / (model.gamma[alive] * x[alive])
    return r0_i, rbar_i


def network_numbers(model: NetworkModel, state: EpidemicState):
    """(rho of the R0 matrix, rho of the Rt matrix)."""
    network_r0 = spectral_radius(distributed_basic(model)).rho
    network_rt = spectral_radius(distributed_effective(model, state)).rho
    return network_r0, network_rt


def classify_trends(community_rbar, epsilon: float = TREND_EPSILON_ANALYTIC) -> tuple:
    """Map each Rbar_i to a trend: >1+eps grows, <1-eps shrinks, NaN undefined."""
    trends = []
    for value in np.asarray(community_rbar, dtype=float):
        if np.isnan(value):
            trends.append(Trend.UNDEFINED)
        elif value > 1 + epsilon:
            trends.append(Trend.INCREASING)
        elif value < 1 - epsilon:
            trends.append(Trend.DECREASING)
        else:
            trends.append(Trend.STATIONARY)
    return tuple(trends)


def rbar_equals_one_state(model: NetworkModel, s) -> np.ndarray:
    """Infection profile that equalizes every community's effective number.

    Returns the unit-sum right Perron eigenvector x of the Rt matrix built
    from ``s``. Evaluating the community effective numbers at that x gives
    Rbar_i = rho(Rt) for every i, so when rho(Rt) = 1 all communities sit
    exactly on the outbreak threshold.
    """
    s = np.asarray(s, dtype=float)
    rt = s[:, np.newaxis] * distributed_basic(model)
    return spectral_radius(rt).right_vec


def report_at(
    model: NetworkModel,
    state: EpidemicState,
    t: float = 0.0,
    epsilon: float = TREND_EPSILON_ANALYTIC,
    zero_tol: float = ZERO_INFECTION_TOL,
    network_r0: Optional[float] = None,
) -> ReproReport:
    """Full :class:`ReproReport` for one state.

    ``network_r0`` may be passed in to avoid recomputing the state-independent
    spectral radius across the samples of a trajectory.
    """
    r0_m = distributed_basic(model)
    rt_m = distributed_effective(model, state)
    x = state.x
    alive = x > zero_tol

    ratio = np.full((model.n, model.n), np.nan)
    ratio[alive, :] = x[np.newaxis, :] / x[alive, np.newaxis]
    rbar_m = rt_m * ratio

    community_r0 = r0_m.sum(axis=1)
    _, community_rbar = community_numbers(model, state, zero_tol=zero_tol)

    if network_r0 is None:
        network_r0 = spectral_radius(r0_m).rho
    network_rt = spectral_radius(rt_m).rho if rt_m.any() else 0.0

    return ReproReport(
        t=t,
        r0_matrix=r0_m,
        rt_matrix=rt_m,
        infection_ratio=ratio,
        rbar_matrix=rbar_m,
        community_r0=community_r0,
        community_rbar=community_rbar,
        network_r0=float(network_r0),
        network_rt=float(network_rt),
        trends=classify_trends(community_rbar, epsilon=epsilon),
    )


def analyze_trajectory(
    model: NetworkModel,
    trajectory: Trajectory,
    epsilon: float = TREND_EPSILON_ANALYTIC,
    zero_tol: float = ZERO_INFECTION_TOL,
) -> list[ReproReport]:
    """One :class:`ReproReport` per trajectory sample."""
    network_r0 = spectral_radius(distributed_basic(model)).rho
    reports = []
    for k in range(len(trajectory)):
        state = EpidemicState(
            s=trajectory.s[k],
            x=trajectory.x[k],
            r=trajectory.r[k],
            model_kind=trajectory.model_kind,
        )
        reports.append(
            report_at(
                model,
                state,
                t=float(trajectory.times[k]),
                epsilon=epsilon,
                zero_tol=zero_tol,
                network_r0=network_r0,
            )
        )
    return reports
