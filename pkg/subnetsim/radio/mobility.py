import logging
from collections.abc import Sequence

import numpy as np

from subnetsim.core.config import ScenarioConfig
from subnetsim.radio.models import MobilityState

logger = logging.getLogger(__name__)


class RestrictedRandomDirection:
    """Constant-speed random-direction mobility inside the area interior.

    A subnetwork keeps its heading until its next step would leave
    [R_sub, side - R_sub]^2 or bring its center closer than the proximity
    threshold to another subnetwork's start-of-slot center. It then redraws a
    uniform heading until the step is feasible, holding position once
    ``max_heading_redraws`` attempts fail.
    """

    def __init__(self, cfg: ScenarioConfig) -> None:
        self.low = cfg.subnetwork_radius_m
        self.high = cfg.area_side_m - cfg.subnetwork_radius_m
        self.step_length = cfg.speed_mps * cfg.slot_duration_s
        self.threshold = cfg.proximity_threshold_m
        self.max_redraws = cfg.max_heading_redraws

    def in_bounds(self, point: np.ndarray) -> bool:
        return bool(np.all(point >= self.low) and np.all(point <= self.high))

    def _is_crowded(self, index: int, point: np.ndarray, positions: np.ndarray) -> bool:
        distances = np.linalg.norm(positions - point, axis=1)
        distances[index] = np.inf
        return bool(np.any(distances < self.threshold))

    def _is_feasible(self, index: int, candidate: np.ndarray, positions: np.ndarray) -> bool:
        if not self.in_bounds(candidate):
            return False
        before = np.linalg.norm(positions - positions[index], axis=1)
        after = np.linalg.norm(positions - candidate, axis=1)
        # a step may stay close to a neighbour only while it moves away from it
        blocked = (after < self.threshold) & (after <= before)
        blocked[index] = False
        return not bool(np.any(blocked))

    def step(self, state: MobilityState, rngs: Sequence[np.random.Generator]) -> MobilityState:
        positions = state.positions
        headings = state.headings.copy()
        new_positions = positions + self.step_length * headings

        for index in range(state.num_subnetworks):
            tentative = new_positions[index]
            if self.in_bounds(tentative) and not self._is_crowded(index, tentative, positions):
                continue

            new_positions[index] = positions[index]
            rng = rngs[index]
            for _ in range(self.max_redraws):
                angle = rng.uniform(0.0, 2.0 * np.pi)
                heading = np.array([np.cos(angle), np.sin(angle)])
                candidate = positions[index] + self.step_length * heading
                if self._is_feasible(index, candidate, positions):
                    new_positions[index] = candidate
                    headings[index] = heading
                    break
            else:
                logger.debug("Subnetwork %d holds position after %d redraws", index, self.max_redraws)

        return MobilityState(positions=new_positions, headings=headings)


def step_positions(
    state: MobilityState,
    cfg: ScenarioConfig,
    rngs: Sequence[np.random.Generator],
) -> MobilityState:
    """Advance every subnetwork by one slot of restricted random-direction motion."""
    return RestrictedRandomDirection(cfg).step(state, rngs)
