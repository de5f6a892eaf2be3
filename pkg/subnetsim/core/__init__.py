from subnetsim.core.config import (
    ScenarioConfig,
    DEFAULT_CONFIG,
    PolicyName,
    ServiceOrder,
    ActionSet,
    KFactorUnit,
    validate_config,
    build_config,
    apply_overrides,
    load_config,
    dump_config
)
from subnetsim.core.errors import (
    SubnetsimError,
    ConfigIssue,
    ConfigValidationError,
    PosteriorFitError,
    AoiInvariantError,
    MetricsError,
    ExperimentError
)
from subnetsim.core.streams import RandomStreams, Purpose

__all__ = [
    "ScenarioConfig",
    "DEFAULT_CONFIG",
    "PolicyName",
    "ServiceOrder",
    "ActionSet",
    "KFactorUnit",
    "validate_config",
    "build_config",
    "apply_overrides",
    "load_config",
    "dump_config",
    "SubnetsimError",
    "ConfigIssue",
    "ConfigValidationError",
    "PosteriorFitError",
    "AoiInvariantError",
    "MetricsError",
    "ExperimentError",
    "RandomStreams",
    "Purpose"
]
