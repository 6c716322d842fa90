"""Topology-aware synthesis of Dicke-state preparation circuits."""
from .circuit import (
    Circuit,
    CircuitError,
    Gate,
    Metrics,
    Topology,
    ValidationReport,
    compute_depth,
    count_cnots,
    invert,
    lower_to_basis,
    metrics,
    validate_connectivity,
)
from .combinatorics import (
    BinomialTable,
    WeightSplitCoefficients,
    binomial,
    oracle_dicke_state,
    oracle_symmetric_state,
    rotation_angle,
    split_coefficients,
)
from .dsu import DsuSpec, build_compression, build_dsu, prepare_symmetric
from .planner import (
    Block,
    GridPlan,
    PlanError,
    Schedule,
    TierTree,
    build_grid_plan,
    build_tier_tree,
    plan_for,
    prepare_dicke,
    schedule_grid,
    unwind_tree,
)
from .simulator import SimulationError, fidelity, run, support_weights
from .wdb import RegisterLayout, build_wdb, reverse_register

__version__ = "0.1.0"
