from subnetsim.engine.models import SlotTrace, CcdfPoint, MetricsSummary
from subnetsim.engine.metrics import ccdf_thresholds, empirical_ccdf, compute_metrics, compute_rmse
from subnetsim.engine.simulator import (
    SubnetworkState,
    SimulationState,
    SlotRows,
    RunContext,
    init_state,
    run_slot,
    run_single,
    run_simulation
)

__all__ = [
    "SlotTrace",
    "CcdfPoint",
    "MetricsSummary",
    "ccdf_thresholds",
    "empirical_ccdf",
    "compute_metrics",
    "compute_rmse",
    "SubnetworkState",
    "SimulationState",
    "SlotRows",
    "RunContext",
    "init_state",
    "run_slot",
    "run_single",
    "run_simulation"
]
