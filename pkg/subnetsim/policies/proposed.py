from dataclasses import dataclass

import numpy as np

from subnetsim.core.config import ScenarioConfig
from subnetsim.learning.brr import BrrPosterior, Prediction, predict
from subnetsim.learning.features import FeatureTransformer
from subnetsim.policies.actions import PowerAction, power_matrix, violation_probability
from subnetsim.policies.base_policy import ActionChoice, BasePolicy


@dataclass(frozen=True)
class PolicyParams:
    alpha_c: float
    alpha_i: float
    delta: float
    warmup_slots: int

    def __post_init__(self) -> None:
        if self.alpha_c < 0 or self.alpha_i < 0:
            raise ValueError("Objective weights must be non-negative")

    @classmethod
    def from_config(cls, cfg: ScenarioConfig, alpha_i: float | None = None) -> "PolicyParams":
        return cls(
            alpha_c=cfg.alpha_c,
            alpha_i=cfg.alpha_i if alpha_i is None else alpha_i,
            delta=cfg.aoi_threshold_s,
            warmup_slots=cfg.warmup_slots,
        )


def objective(pred: Prediction, params: PolicyParams) -> np.ndarray:
    """alpha_c * Pr[AoI > delta] - alpha_i * var / delta^2, per candidate.

    Both terms are dimensionless, so the weights do not depend on the time unit.
    """
    prob = np.asarray(violation_probability(pred, params.delta))
    return params.alpha_c * prob - params.alpha_i * np.asarray(pred.var) / params.delta**2


def argmin_random_tie(values: np.ndarray, rng: np.random.Generator) -> int:
    """Index of the minimum; exact ties are broken uniformly at random."""
    ties = np.flatnonzero(values == values.min())
    if ties.size == 1:
        return int(ties[0])
    return int(ties[rng.integers(ties.size)])


def choose_from_features(
    posterior: BrrPosterior,
    candidate_features: np.ndarray,
    params: PolicyParams,
    rng: np.random.Generator,
) -> ActionChoice:
    pred = predict(posterior, candidate_features)
    index = argmin_random_tie(objective(pred, params), rng)
    return ActionChoice(index=index, prediction=Prediction(mu=float(pred.mu[index]), var=float(pred.var[index])))


def select_action_proposed(
    posterior: BrrPosterior,
    aoi: float,
    actions: list[PowerAction],
    params: PolicyParams,
    rng: np.random.Generator,
    transformer: FeatureTransformer,
) -> PowerAction:
    """Action minimizing the exploitation/exploration objective for the current AoI."""
    candidate_features = transformer.transform(transformer.raw_inputs(aoi, power_matrix(actions)))
    return actions[choose_from_features(posterior, candidate_features, params, rng).index]


class ProposedPolicy(BasePolicy):
    """Proactive allocation trading predicted AoI violation against predictive variance."""

    learns = True

    def __init__(self, actions: list[PowerAction], params: PolicyParams) -> None:
        super().__init__(
            policy_id="proposed",
            description="BRR active learning with exploration bonus",
            actions=actions
        )
        self.params = params

    def select(
        self,
        aoi: float,
        posterior: BrrPosterior | None,
        candidate_features: np.ndarray | None,
        rng: np.random.Generator,
    ) -> ActionChoice:
        if posterior is None or candidate_features is None:
            raise ValueError(f"{self.name} needs a fitted posterior and candidate features")
        return choose_from_features(posterior, candidate_features, self.params, rng)


class GreedyPolicy(ProposedPolicy):
    """The proposed policy with the exploration weight fixed at zero."""

    def __init__(self, actions: list[PowerAction], params: PolicyParams) -> None:
        super().__init__(actions, PolicyParams(params.alpha_c, 0.0, params.delta, params.warmup_slots))
        self.policy_id = "greedy"
        self.description = "BRR exploitation only"
