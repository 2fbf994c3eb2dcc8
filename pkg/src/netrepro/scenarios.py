"""Shipped scenario presets.

``ten-community-sir`` (alias ``paper-fig4``): a deterministic SIR run over a
strongly connected 10-community network in which the network-level effective
reproduction number stays below 1 for the whole run while several
communities still see genuine outbreaks. Two hot communities (2 and 4) seed
their nearly-uninfected neighbors (3 and 5), whose community effective
numbers start far above 1.

``three-community-stochastic`` (alias ``paper-3node``): a piece-wise
time-varying stochastic SIR over three communities of 20,000 people seeded
with 12, 3, and 23 cases for 91 days; the community-1-to-community-2
transmission rate is halved on day 45, which the pair-level estimator should
pick up as a drop in the (2<-1) estimate.

Parameters are invented for this tool (chosen to make those qualitative
behaviors robust), not taken from any published table.
"""

from __future__ import annotations

import numpy as np

from .errors import ConfigError
from .model import EpidemicState, ModelKind, validate_model

_FIG4_N = 10


def _fig4_beta() -> list:
    beta = np.zeros((_FIG4_N, _FIG4_N))
    np.fill_diagonal(beta, 0.16)
    for j in range(_FIG4_N):
        beta[(j + 1) % _FIG4_N, j] = 0.05
    for i, j, v in [(2, 7, 0.03), (5, 0, 0.03), (8, 3, 0.02), (0, 5, 0.02), (6, 9, 0.03)]:
        beta[i, j] = v
    beta[2, 1] = 0.12
    beta[4, 3] = 0.12
    return beta.tolist()


def _fig4_initial() -> dict:
    x = np.full(_FIG4_N, 0.004)
    x[1] = 0.09
    x[3] = 0.07
    x[2] = 1e-4
    x[4] = 2e-4
    return {
        "s": (1 - x).tolist(),
        "x": x.tolist(),
        "r": np.zeros(_FIG4_N).tolist(),
    }


def ten_community_sir_config() -> dict:
    return {
        "schema_version": 1,
        "name": "ten-community-sir",
        "model_kind": "SIR",
        "beta": _fig4_beta(),
        "gamma": [0.25] * _FIG4_N,
        "dt": 0.01,
        "horizon": 60.0,
        "sample_interval": 0.25,
        "initial": _fig4_initial(),
        "output_dir": "out",
    }


_3NODE_GAMMA = [1 / 7] * 3
_3NODE_BETA = [
    [0.20, 0.00, 0.05],
    [0.05, 0.20, 0.00],
    [0.00, 0.05, 0.20],
]
_3NODE_CHANGE_DAY = 45


def _3node_halved_beta() -> list:
    beta = [row[:] for row in _3NODE_BETA]
    beta[1][0] = beta[1][0] / 2
    return beta


def three_community_stochastic_config() -> dict:
    return {
        "schema_version": 1,
        "name": "three-community-stochastic",
        "model_kind": "SIR",
        "beta": _3NODE_BETA,
        "gamma": list(_3NODE_GAMMA),
        "days": 91,
        "seed": 20200303,
        "start_date": "2020-03-03",
        "initial_counts": {
            "population": [20000, 20000, 20000],
            "infected": [12, 3, 23],
        },
        "schedule": [
            {
                "from_day": 0,
                "to_day": _3NODE_CHANGE_DAY,
                "beta": _3NODE_BETA,
                "gamma": list(_3NODE_GAMMA),
            },
            {
                "from_day": _3NODE_CHANGE_DAY,
                "to_day": 91,
                "beta": _3node_halved_beta(),
                "gamma": list(_3NODE_GAMMA),
            },
        ],
        "estimation": {
            "window": 7,
            "si_mean": 4.7,
            "si_sd": 2.9,
            "si_max_lag": 20,
            "prior_shape": 1.0,
            "prior_scale": 5.0,
        },
        "output_dir": "out",
    }


PRESETS = {
    "ten-community-sir": ten_community_sir_config,
    "paper-fig4": ten_community_sir_config,
    "three-community-stochastic": three_community_stochastic_config,
    "paper-3node": three_community_stochastic_config,
}


def preset_config(name: str) -> dict:
    try:
        return PRESETS[name]()
    except KeyError:
        raise ConfigError(f"unknown preset {name!r}; available: {sorted(PRESETS)}")


def outbreak_witness():
    """Two-community state whose community 1 outbreaks despite R0_1 < 1.

    Returns (model, state) with R0_1 = 0.9 and community effective number
    40.5 driven by the neighbor's 100x higher infection level. The state
    uses the idealized fully susceptible normalization s = 1, so it is built
    directly rather than through simplex validation.
    """
    model = validate_model([[0.05, 0.04], [0.04, 0.05]], [0.1, 0.1])
    state = EpidemicState(
        s=np.ones(2),
        x=np.array([0.001, 0.1]),
        r=np.zeros(2),
        model_kind=ModelKind.SIR,
    )
    return model, state
