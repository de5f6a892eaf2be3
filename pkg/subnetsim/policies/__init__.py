from subnetsim.core.config import PolicyName, ScenarioConfig
from subnetsim.policies.actions import (
    PowerAction,
    enumerate_actions,
    actions_for,
    power_matrix,
    violation_probability
)
from subnetsim.policies.base_policy import ActionChoice, BasePolicy
from subnetsim.policies.default_policy import DefaultPolicy, select_action_default
from subnetsim.policies.proposed import (
    PolicyParams,
    ProposedPolicy,
    GreedyPolicy,
    objective,
    select_action_proposed
)


def build_policy(cfg: ScenarioConfig, actions: list[PowerAction]) -> BasePolicy:
    """Instantiate the strategy named by ``cfg.policy``."""
    params = PolicyParams.from_config(cfg)
    if cfg.policy is PolicyName.DEFAULT:
        return DefaultPolicy(actions)
    if cfg.policy is PolicyName.GREEDY:
        return GreedyPolicy(actions, params)
    return ProposedPolicy(actions, params)


__all__ = [
    "PowerAction",
    "enumerate_actions",
    "actions_for",
    "power_matrix",
    "violation_probability",
    "ActionChoice",
    "BasePolicy",
    "DefaultPolicy",
    "select_action_default",
    "PolicyParams",
    "ProposedPolicy",
    "GreedyPolicy",
    "objective",
    "select_action_proposed",
    "build_policy"
]
