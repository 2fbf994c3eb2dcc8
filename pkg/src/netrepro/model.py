"""Networked epidemic model and instantaneous state.

A model is a transmission matrix ``beta`` (``beta[i, j]`` is the rate at
which infection in community j generates infection in community i), one
recovery rate per community, and the requirement that the transmission graph
is strongly connected. States carry per-community susceptible / infected /
recovered proportions on the unit simplex.

All community indices reported in errors are 1-based; array indices in the
Python API are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    DimensionMismatch,
    NegativeTransmission,
    NonpositiveRecovery,
    NonSquareMatrix,
    NotStronglyConnected,
    RangeViolation,
    SimplexViolation,
)

SIMPLEX_TOL = 1e-9
EQUILIBRIUM_TOL = 1e-9


class ModelKind(str, Enum):
    SIS = "SIS"
    SIR = "SIR"


class EquilibriumKind(str, Enum):
    HEALTHY = "Healthy"
    ENDEMIC = "Endemic"
    NOT_EQUILIBRIUM = "NotEquilibrium"


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class NetworkModel:
    """Validated static epidemic network. Build via :func:`validate_model`."""

    beta: np.ndarray
    gamma: np.ndarray

    @property
    def n(self) -> int:
        return self.gamma.shape[0]


@dataclass(frozen=True)
class EpidemicState:
    """Per-community compartment proportions at one instant."""

    s: np.ndarray
    x: np.ndarray
    r: np.ndarray
    model_kind: ModelKind

    @property
    def n(self) -> int:
        return self.s.shape[0]


@dataclass(frozen=True)
class EquilibriumClass:
    kind: EquilibriumKind
    residual: float


def _reachable_from(out_neighbors: list[list[int]], start: int) -> np.ndarray:
    n = len(out_neighbors)
    seen = np.zeros(n, dtype=bool)
    seen[start] = True
    stack = [start]
    while stack:
        u = stack.pop()
        for v in out_neighbors[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return seen


def validate_model(beta, gamma) -> NetworkModel:
    """Validate parameters and return an immutable :class:`NetworkModel`.

    Checks shape compatibility, sign constraints, and strong connectivity of
    the directed graph that has an edge j -> i whenever ``beta[i, j] > 0``.
    """
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    if beta.ndim != 2 or beta.shape[0] != beta.shape[1]:
        rows = beta.shape[0] if beta.ndim >= 1 else 0
        cols = beta.shape[1] if beta.ndim >= 2 else 0
        raise NonSquareMatrix(rows, cols)
    n = beta.shape[0]
    if gamma.ndim != 1 or gamma.shape[0] != n:
        raise DimensionMismatch(n, gamma.size, what="gamma")

    neg = np.argwhere(beta < 0)
    if neg.size:
        i, j = neg[0]
        raise NegativeTransmission(int(i) + 1, int(j) + 1, float(beta[i, j]))
    bad = np.flatnonzero(~(gamma > 0))
    if bad.size:
        i = int(bad[0])
        raise NonpositiveRecovery(i + 1, float(gamma[i]))

    # edge j -> i iff beta[i, j] > 0: out-neighbors of u are the support of column u
    support = beta > 0
    out_nb = [list(np.flatnonzero(support[:, u])) for u in range(n)]
    in_nb = [list(np.flatnonzero(support[u, :])) for u in range(n)]

    fwd = _reachable_from(out_nb, 0)
    if not fwd.all():
        target = int(np.flatnonzero(~fwd)[0])
        raise NotStronglyConnected(1, target + 1)
    bwd = _reachable_from(in_nb, 0)  # nodes that can reach node 0
    if not bwd.all():
        source = int(np.flatnonzero(~bwd)[0])
        raise NotStronglyConnected(source + 1, 1)

    return NetworkModel(beta=_frozen(beta), gamma=_frozen(gamma))


def validate_state(s, x, r=None, model_kind=ModelKind.SIS, tol: float = SIMPLEX_TOL) -> EpidemicState:
    """Validate compartment vectors and return a clamped immutable state.

    The compartment identity (s + x = 1 for SIS, s + x + r = 1 for SIR) must
    hold within ``tol`` per community and every entry must lie in
    [-tol, 1 + tol]. Sub-tolerance drift is clamped to [0, 1], so integrator
    output round-trips through this function.
    """
    model_kind = ModelKind(model_kind)
    s = np.asarray(s, dtype=float)
    x = np.asarray(x, dtype=float)
    n = s.shape[0]
    if x.shape[0] != n:
        raise DimensionMismatch(n, x.shape[0], what="x")
    if r is None:
        r = np.zeros(n)
    else:
        r = np.asarray(r, dtype=float)
        if r.shape[0] != n:
            raise DimensionMismatch(n, r.shape[0], what="r")

    for name, vec in (("s", s), ("x", x), ("r", r)):
        bad = np.flatnonzero((vec < -tol) | (vec > 1 + tol))
        if bad.size:
            i = int(bad[0])
            raise RangeViolation(i + 1, name, float(vec[i]))

    if model_kind is ModelKind.SIS:
        total = s + x
        bad = np.flatnonzero(np.abs(r) > tol)
        if bad.size:
            i = int(bad[0])
            raise RangeViolation(i + 1, "r (must be 0 under SIS)", float(r[i]))
    else:
        total = s + x + r
    bad = np.flatnonzero(np.abs(total - 1.0) > tol)
    if bad.size:
        i = int(bad[0])
        raise SimplexViolation(i + 1, float(total[i]))

    return EpidemicState(
        s=_frozen(np.clip(s, 0.0, 1.0)),
        x=_frozen(np.clip(x, 0.0, 1.0)),
        r=_frozen(np.clip(r, 0.0, 1.0)),
        model_kind=model_kind,
    )


def classify_equilibrium(model: NetworkModel, state: EpidemicState, tol: float = EQUILIBRIUM_TOL) -> EquilibriumClass:
    """Classify a state as healthy, endemic, or not an equilibrium.

    Healthy means x = 0 (within ``tol``). Endemic requires the full vector
    field to vanish (max-norm residual below ``tol``) with every infected
    proportion strictly inside (tol, 1 - tol).
    """
    from .dynamics import vector_field_sir, vector_field_sis  # cycle guard

    if state.model_kind is ModelKind.SIS:
        derivs = vector_field_sis(model, state)
    else:
        derivs = vector_field_sir(model, state)
    residual = float(max(np.abs(d).max() for d in derivs))

    if np.abs(state.x).max() <= tol:
        return EquilibriumClass(EquilibriumKind.HEALTHY, residual)
    if residual < tol and np.all(state.x > tol) and np.all(state.x < 1 - tol):
        return EquilibriumClass(EquilibriumKind.ENDEMIC, residual)
    return EquilibriumClass(EquilibriumKind.NOT_EQUILIBRIUM, residual)
