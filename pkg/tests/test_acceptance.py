"""Full-scale trend checks. Each takes minutes; run with ``pytest -m slow``."""

import pytest

from subnetsim.core.config import DEFAULT_CONFIG, PolicyName, apply_overrides
from subnetsim.engine.simulator import run_simulation

pytestmark = pytest.mark.slow


def violation(**overrides) -> float:
    _, summary = run_simulation(apply_overrides(DEFAULT_CONFIG, **overrides))
    return summary.violation_probability


def test_proposed_cuts_default_violations():
    default = violation(policy=PolicyName.DEFAULT)
    proposed = violation(policy=PolicyName.PROPOSED)
    assert default > 0
    assert proposed <= 0.1 * default


@pytest.mark.parametrize("rate", [1e6, 2e6])
def test_policy_ordering(rate):
    default = violation(policy=PolicyName.DEFAULT, sampling_rate_bps=rate)
    greedy = violation(policy=PolicyName.GREEDY, sampling_rate_bps=rate)
    proposed = violation(policy=PolicyName.PROPOSED, sampling_rate_bps=rate)
    assert proposed <= greedy <= default


@pytest.mark.parametrize("policy", list(PolicyName))
def test_higher_sampling_rate_violates_more(policy):
    assert violation(policy=policy, sampling_rate_bps=2e6) >= violation(policy=policy, sampling_rate_bps=1e6)


def test_dataset_size_trend():
    rmse = {}
    for size in (50, 200, 500):
        _, summary = run_simulation(apply_overrides(DEFAULT_CONFIG, window_size=size))
        rmse[size] = summary.rmse_s
    assert rmse[200] < rmse[50]
    assert rmse[500] >= rmse[200]


def test_moderate_exploration_wins():
    results = {alpha: violation(alpha_i=alpha) for alpha in (0, 1, 10, 100, 1000)}
    best_moderate = min(results[alpha] for alpha in (1, 10, 100))
    assert best_moderate < results[0]
    assert best_moderate < results[1000]
