from subnetsim.radio.models import DeploymentState, MobilityState, LinkGainTensor
from subnetsim.radio.deployment import init_deployment
from subnetsim.radio.mobility import RestrictedRandomDirection, step_positions
from subnetsim.radio.channel import (
    path_loss_db,
    sample_shadowing_db,
    sample_rician_power_gain,
    build_gain_tensor,
    interference,
    interference_matrix,
    transmission_rate,
    transmission_rates
)

__all__ = [
    "DeploymentState",
    "MobilityState",
    "LinkGainTensor",
    "init_deployment",
    "RestrictedRandomDirection",
    "step_positions",
    "path_loss_db",
    "sample_shadowing_db",
    "sample_rician_power_gain",
    "build_gain_tensor",
    "interference",
    "interference_matrix",
    "transmission_rate",
    "transmission_rates"
]
