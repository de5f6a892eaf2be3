import logging

import numpy as np

from subnetsim.core.config import ScenarioConfig
from subnetsim.radio.models import DeploymentState

logger = logging.getLogger(__name__)


def unit_vectors(angles: np.ndarray) -> np.ndarray:
    return np.column_stack((np.cos(angles), np.sin(angles)))


def init_deployment(cfg: ScenarioConfig, rng: np.random.Generator) -> DeploymentState:
    """Drop N subnetworks uniformly at random in the interior of the area.

    Each AP lies in [R_sub, side - R_sub]^2, headings are uniform on the circle
    and each sensor sits at a uniform angle and a uniform radial distance in
    [d_min, R_sub] from its AP. The draw order is fixed, so a seeded generator
    always yields the same deployment.
    """
    n = cfg.num_subnetworks
    low = cfg.subnetwork_radius_m
    high = cfg.area_side_m - cfg.subnetwork_radius_m

    ap_positions = rng.uniform(low, high, size=(n, 2))
    headings = unit_vectors(rng.uniform(0.0, 2.0 * np.pi, size=n))
    offset_angles = rng.uniform(0.0, 2.0 * np.pi, size=n)
    offset_radii = rng.uniform(cfg.min_sensor_distance_m, cfg.subnetwork_radius_m, size=n)
    sensor_offsets = unit_vectors(offset_angles) * offset_radii[:, None]

    logger.debug("Deployed %d subnetworks in a %.1f m area", n, cfg.area_side_m)
    return DeploymentState(ap_positions=ap_positions, headings=headings, sensor_offsets=sensor_offsets)
