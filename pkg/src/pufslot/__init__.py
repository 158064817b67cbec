"""PUF-seeded TDMA slot assignment for distributed wireless implants."""

from ._kernels import BACKEND
from .collision import (
    CollisionEstimate,
    CollisionQuery,
    collision_probability_exact,
    collision_probability_rational,
    monte_carlo_collision,
    nodes_supported,
)
from .dispersion import compare_orders, consecutive_seed_std, sweep_outputs, windowed_std
from .hardware import (
    DieSample,
    RoPufConfig,
    RoSpec,
    estimate_cost,
    extract_seed,
    sample_die,
    traditional_ropuf_response,
)
from .prbs import (
    FeedbackPolynomial,
    UnsupportedOrderError,
    lfsr_step,
    period,
    registry_polynomial,
    signature_from_seed,
)
from .sim import (
    CollisionReport,
    ConfigError,
    ImplantNode,
    SimConfig,
    Simulation,
    broadcast_sync,
    build_network,
    communication_slot,
    node_start_time,
    run_simulation,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "CollisionEstimate",
    "CollisionQuery",
    "CollisionReport",
    "ConfigError",
    "DieSample",
    "FeedbackPolynomial",
    "ImplantNode",
    "RoPufConfig",
    "RoSpec",
    "SimConfig",
    "Simulation",
    "UnsupportedOrderError",
    "broadcast_sync",
    "build_network",
    "collision_probability_exact",
    "collision_probability_rational",
    "communication_slot",
    "compare_orders",
    "consecutive_seed_std",
    "estimate_cost",
    "extract_seed",
    "lfsr_step",
    "monte_carlo_collision",
    "node_start_time",
    "nodes_supported",
    "period",
    "registry_polynomial",
    "run_simulation",
    "sample_die",
    "signature_from_seed",
    "sweep_outputs",
    "traditional_ropuf_response",
    "windowed_std",
]
