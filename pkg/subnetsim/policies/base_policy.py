from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from subnetsim.learning.brr import BrrPosterior, Prediction
from subnetsim.policies.actions import PowerAction


@dataclass(frozen=True)
class ActionChoice:
    """Index of the selected action and, for learning policies, its prediction."""

    index: int
    prediction: Prediction | None = None


class BasePolicy(ABC):
    """Abstract base class for all resource allocation strategies."""

    learns: bool = False

    def __init__(self, policy_id: str, description: str, actions: list[PowerAction]) -> None:
        if not actions:
            raise ValueError("A policy needs at least one action")
        self.policy_id = policy_id
        self.description = description
        self.actions = actions

    @abstractmethod
    def select(
        self,
        aoi: float,
        posterior: BrrPosterior | None,
        candidate_features: np.ndarray | None,
        rng: np.random.Generator,
    ) -> ActionChoice:
        """Select the action of one subnetwork for the current slot.

        Args:
            aoi: AoI at the start of the slot, in seconds
            posterior: Fitted learner, None for non-learning policies
            candidate_features: Feature rows of (aoi, action) for every action, in action order
            rng: Policy stream of the subnetwork

        Returns:
            The selected action
        """
        pass

    @property
    def name(self) -> str:
        return self.__class__.__name__
