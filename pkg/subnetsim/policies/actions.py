import itertools
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

from subnetsim.core.config import ActionSet, ScenarioConfig
from subnetsim.learning.brr import Prediction


@dataclass(frozen=True)
class PowerAction:
    """Power vector P_n(t) over the B resource blocks, in watts."""

    action_id: int
    power: tuple[float, ...]

    @property
    def is_silent(self) -> bool:
        return not any(self.power)

    @property
    def active_rbs(self) -> tuple[int, ...]:
        return tuple(b for b, value in enumerate(self.power) if value > 0)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.power, dtype=float)


def enumerate_actions(
    num_rbs: int,
    num_levels: int,
    max_power_w: float,
    action_set: ActionSet = ActionSet.SINGLE_RB,
) -> list[PowerAction]:
    """Feasible power allocations; ``num_levels`` is K, the number of non-zero levels.

    The single-RB set is the silent action followed by one action per
    (RB, non-zero level) pair, B*K + 1 in total. The full product set holds
    all (K+1)^B vectors.
    """
    if num_rbs < 1 or num_levels < 1:
        raise ValueError("Need at least one resource block and one non-zero power level")
    levels = [k * max_power_w / num_levels for k in range(num_levels + 1)]

    if action_set is ActionSet.FULL_PRODUCT:
        vectors = list(itertools.product(levels, repeat=num_rbs))
    else:
        vectors = [tuple([0.0] * num_rbs)]
        for b in range(num_rbs):
            for level in levels[1:]:
                vector = [0.0] * num_rbs
                vector[b] = level
                vectors.append(tuple(vector))
    return [PowerAction(action_id=i, power=tuple(v)) for i, v in enumerate(vectors)]


def actions_for(cfg: ScenarioConfig) -> list[PowerAction]:
    return enumerate_actions(cfg.num_rbs, cfg.num_power_levels - 1, cfg.max_power_w, cfg.action_set)


def power_matrix(actions: list[PowerAction]) -> np.ndarray:
    return np.array([action.power for action in actions], dtype=float)


def violation_probability(pred: Prediction, threshold: float) -> float | np.ndarray:
    """Pr[AoI > threshold] under the Gaussian predictive distribution N(mu, var)."""
    z = (threshold - np.asarray(pred.mu)) / np.sqrt(pred.var)
    prob = ndtr(-z)
    return float(prob) if np.ndim(prob) == 0 else prob
