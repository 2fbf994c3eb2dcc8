"""netrepro: distributed reproduction numbers for networked SIS/SIR epidemics.

Simulate deterministic and stochastic epidemics on strongly connected
community networks, compute per-edge / per-community / network reproduction
numbers, and estimate them from daily incidence data.
"""

from ._kernels import BACKEND
from .dynamics import (
    IncidenceSeries,
    ScheduleEntry,
    Trajectory,
    integrate,
    simulate_stochastic_sir,
    vector_field_sir,
    vector_field_sis,
)
from .estimation import (
    DistributedEstimates,
    RtEstimate,
    SerialInterval,
    discretize_serial_interval,
    estimate_distributed,
    estimate_rt,
    infection_pressure,
)
from .model import (
    EpidemicState,
    EquilibriumClass,
    EquilibriumKind,
    ModelKind,
    NetworkModel,
    classify_equilibrium,
    validate_model,
    validate_state,
)
from .repro import (
    ReproReport,
    Trend,
    analyze_trajectory,
    classify_trends,
    community_numbers,
    distributed_basic,
    distributed_effective,
    infection_ratios,
    network_numbers,
    rbar_equals_one_state,
    report_at,
)
from .spectral import PerronResult, left_perron_of_shifted, spectral_radius, weighted_average

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DistributedEstimates",
    "EpidemicState",
    "EquilibriumClass",
    "EquilibriumKind",
    "IncidenceSeries",
    "ModelKind",
    "NetworkModel",
    "PerronResult",
    "ReproReport",
    "RtEstimate",
    "ScheduleEntry",
    "SerialInterval",
    "Trajectory",
    "Trend",
    "analyze_trajectory",
    "classify_equilibrium",
    "classify_trends",
    "community_numbers",
    "discretize_serial_interval",
    "distributed_basic",
    "distributed_effective",
    "estimate_distributed",
    "estimate_rt",
    "infection_pressure",
    "infection_ratios",
    "integrate",
    "left_perron_of_shifted",
    "network_numbers",
    "rbar_equals_one_state",
    "report_at",
    "simulate_stochastic_sir",
    "spectral_radius",
    "validate_model",
    "validate_state",
    "vector_field_sir",
    "vector_field_sis",
    "weighted_average",
    "__version__",
]
