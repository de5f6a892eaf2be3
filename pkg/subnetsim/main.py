from subnetsim.core import ScenarioConfig, DEFAULT_CONFIG, load_config, validate_config
from subnetsim.core.experiment import ExperimentSpec, ExperimentResult, SweepAxis, preset_spec
from subnetsim.core.orchestrator import Orchestrator
from subnetsim.engine import MetricsSummary, SlotTrace, run_simulation

__all__ = [
    "ScenarioConfig",
    "DEFAULT_CONFIG",
    "load_config",
    "validate_config",
    "ExperimentSpec",
    "ExperimentResult",
    "SweepAxis",
    "preset_spec",
    "Orchestrator",
    "MetricsSummary",
    "SlotTrace",
    "run_simulation"
]
