import numpy as np

from subnetsim.learning.brr import BrrPosterior
from subnetsim.policies.actions import PowerAction
from subnetsim.policies.base_policy import ActionChoice, BasePolicy


def select_action_default(actions: list[PowerAction], rng: np.random.Generator) -> PowerAction:
    """Uniform draw over the non-silent actions; a sensor with data always transmits."""
    transmitting = [action for action in actions if not action.is_silent]
    if not transmitting:
        raise ValueError("No transmitting action available")
    return transmitting[int(rng.integers(len(transmitting)))]


class DefaultPolicy(BasePolicy):
    """Random resource allocation without learning."""

    def __init__(self, actions: list[PowerAction]) -> None:
        super().__init__(
            policy_id="default",
            description="Uniformly random RB and power level every slot",
            actions=actions
        )

    def select(
        self,
        aoi: float,
        posterior: BrrPosterior | None,
        candidate_features: np.ndarray | None,
        rng: np.random.Generator,
    ) -> ActionChoice:
        action = select_action_default(self.actions, rng)
        return ActionChoice(index=action.action_id)
