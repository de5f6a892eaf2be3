from collections import Counter

import numpy as np
import pytest

from subnetsim.core.config import ActionSet, PolicyName, ScenarioConfig
from subnetsim.learning.brr import BrrPosterior, Prediction, SampleWindow, fit_posterior, predict, push_sample
from subnetsim.learning.features import FeatureTransformer
from subnetsim.policies import build_policy
from subnetsim.policies.actions import actions_for, enumerate_actions, power_matrix, violation_probability
from subnetsim.policies.default_policy import DefaultPolicy, select_action_default
from subnetsim.policies.proposed import (
    GreedyPolicy,
    PolicyParams,
    ProposedPolicy,
    argmin_random_tie,
    objective,
    select_action_proposed,
)

DELTA = 0.010


def posterior_from(w_hat: np.ndarray, sigma_w: np.ndarray, b0: float = 0.0, sigma2: float = 1e-6) -> BrrPosterior:
    return BrrPosterior(
        w_hat=w_hat,
        chol=np.linalg.cholesky(np.linalg.inv(sigma_w)),
        b0=b0,
        sigma2=sigma2,
        feature_mean=np.zeros(w_hat.shape[0]),
        num_samples=10,
    )


def fitted_on_slot_ages(cfg: ScenarioConfig, rng: np.random.Generator) -> tuple[BrrPosterior, FeatureTransformer]:
    """Posterior learned from next AoI = tau + AoI * (1 - P / p_max) on one RB, in seconds."""
    tau = cfg.slot_duration_s
    transformer = FeatureTransformer.from_config(cfg)
    levels = power_matrix(actions_for(cfg))[:, 0]
    window = SampleWindow(cfg.window_size, raw_dim=2, transformer=transformer)
    for _ in range(cfg.window_size):
        aoi = tau * rng.integers(1, 5)
        power = rng.choice(levels)
        next_aoi = tau + aoi * (1.0 - power / cfg.max_power_w) + 1e-4 * rng.normal()
        push_sample(window, np.array([aoi, power]), next_aoi)
    return fit_posterior(window, cfg.ridge_lambda, cfg.sigma2_floor), transformer


class TestActions:
    def test_single_rb_count(self):
        actions = enumerate_actions(5, 2, 0.01)
        assert len(actions) == 11
        assert actions[0].is_silent
        assert all(len(action.active_rbs) == 1 for action in actions[1:])

    def test_minimal_action_set(self):
        actions = enumerate_actions(1, 1, 0.01)
        assert [action.power for action in actions] == [(0.0,), (0.01,)]

    def test_full_product_count(self):
        assert len(enumerate_actions(3, 2, 0.01, ActionSet.FULL_PRODUCT)) == 27

    def test_ids_follow_order(self, table_config):
        actions = actions_for(table_config)
        assert [action.action_id for action in actions] == list(range(11))
        assert power_matrix(actions).shape == (11, 5)

    def test_levels(self, table_config):
        levels = sorted({max(action.power) for action in actions_for(table_config)})
        assert levels == pytest.approx([0.0, 0.005, 0.01])


class TestViolationProbability:
    def test_mean_at_threshold(self):
        assert violation_probability(Prediction(mu=DELTA, var=1e-6), DELTA) == pytest.approx(0.5)

    def test_one_sigma_above(self):
        pred = Prediction(mu=DELTA + 1e-3, var=1e-6)
        assert violation_probability(pred, DELTA) == pytest.approx(0.8413, abs=1e-4)

    def test_far_below(self):
        assert violation_probability(Prediction(mu=0.003, var=1e-12), DELTA) < 1e-12

    def test_vectorized(self):
        pred = Prediction(mu=np.array([DELTA, DELTA + 1e-3]), var=np.array([1e-6, 1e-6]))
        assert violation_probability(pred, DELTA) == pytest.approx([0.5, 0.8413], abs=1e-4)


class TestProposedSelection:
    @pytest.fixture
    def candidates(self) -> np.ndarray:
        return np.eye(3)

    def test_exploitation_picks_lowest_violation(self, candidates, rng):
        post = posterior_from(np.array([0.012, 0.004, 0.009]), np.eye(3) * 1e-6)
        params = PolicyParams(1.0, 0.0, DELTA, 0)
        actions = enumerate_actions(1, 2, 0.01)
        choice = ProposedPolicy(actions, params).select(0.003, post, candidates, rng)
        assert choice.index == 1
        assert choice.prediction.mu == pytest.approx(0.004)

    def test_exploration_picks_largest_variance(self, candidates, rng):
        post = posterior_from(np.zeros(3), np.diag([0.5, 2.0, 1.0]))
        actions = enumerate_actions(1, 2, 0.01)
        choice = ProposedPolicy(actions, PolicyParams(0.0, 1.0, DELTA, 0)).select(0.003, post, candidates, rng)
        assert choice.index == 1

    def test_ties_are_split_evenly(self, rng):
        values = np.array([0.2, 0.1, 0.1, 0.4])
        counts = Counter(argmin_random_tie(values, rng) for _ in range(10_000))
        assert set(counts) == {1, 2}
        assert counts[1] / 10_000 == pytest.approx(0.5, abs=0.05)

    def test_select_action_proposed_uses_transformer(self, rng):
        cfg = ScenarioConfig(num_rbs=1)
        transformer = FeatureTransformer.from_config(cfg)
        actions = actions_for(cfg)
        # mean AoI falls with the power feature, so full power is predicted freshest
        w_hat = np.zeros(transformer.feature_dim)
        w_hat[1] = -0.01
        post = posterior_from(w_hat, np.eye(transformer.feature_dim) * 1e-9, b0=0.012)
        chosen = select_action_proposed(post, 0.006, actions, PolicyParams(1.0, 0.0, DELTA, 0), rng, transformer)
        assert chosen.power == pytest.approx((0.01,))

    def test_objective_invariant_to_time_units(self):
        mu = np.array([0.008, 0.011, 0.0095])
        var = np.array([1e-6, 4e-6, 2e-6])
        in_seconds = objective(Prediction(mu=mu, var=var), PolicyParams(1.0, 10.0, DELTA, 0))
        in_millis = objective(Prediction(mu=mu * 1e3, var=var * 1e6), PolicyParams(1.0, 10.0, DELTA * 1e3, 0))
        assert in_seconds == pytest.approx(in_millis)
        exploitation = objective(Prediction(mu=mu, var=var), PolicyParams(1.0, 0.0, DELTA, 0))
        assert exploitation - in_seconds == pytest.approx([0.1, 0.4, 0.2])

    def test_argmin_invariant_to_weight_scaling(self, rng):
        for _ in range(50):
            pred = Prediction(mu=rng.uniform(0.005, 0.015, 11), var=rng.uniform(1e-7, 4e-6, 11))
            alpha_c, alpha_i = rng.uniform(0.0, 2.0), rng.uniform(0.0, 100.0)
            base = np.argmin(objective(pred, PolicyParams(alpha_c, alpha_i, DELTA, 0)))
            for scale in (1e-3, 7.0, 1e4):
                scaled = objective(pred, PolicyParams(scale * alpha_c, scale * alpha_i, DELTA, 0))
                assert np.argmin(scaled) == base

    def test_learned_posterior_separates_actions(self, rng):
        cfg = ScenarioConfig(num_rbs=1, ridge_lambda=1e-3)
        post, transformer = fitted_on_slot_ages(cfg, rng)
        actions = actions_for(cfg)
        aoi = 4 * cfg.slot_duration_s
        pred = predict(post, transformer.transform(transformer.raw_inputs(aoi, power_matrix(actions))))
        assert np.all(pred.var < (0.25 * DELTA) ** 2)
        prob = violation_probability(pred, DELTA)
        # silent: 15 ms, full power: 3 ms
        assert prob[0] > 0.9
        assert prob[2] < 0.01
        chosen = select_action_proposed(post, aoi, actions, PolicyParams.from_config(cfg), rng, transformer)
        assert not chosen.is_silent

    def test_greedy_matches_proposed_without_exploration(self):
        cfg = ScenarioConfig(num_rbs=1, ridge_lambda=1e-3)
        actions = actions_for(cfg)
        learned, transformer = fitted_on_slot_ages(cfg, np.random.default_rng(8))
        # b0 = delta puts every action at exactly 0.5, so selection falls to the tie-break draw
        tied = posterior_from(np.zeros(transformer.feature_dim), np.eye(transformer.feature_dim), b0=DELTA)
        greedy = GreedyPolicy(actions, PolicyParams.from_config(cfg))
        no_exploration = PolicyParams(cfg.alpha_c, 0.0, DELTA, cfg.warmup_slots)
        proposed_rng, greedy_rng = np.random.default_rng(21), np.random.default_rng(21)
        for post in (learned, tied):
            for aoi in cfg.slot_duration_s * np.arange(1, 12):
                features = transformer.transform(transformer.raw_inputs(aoi, power_matrix(actions)))
                expected = select_action_proposed(post, aoi, actions, no_exploration, proposed_rng, transformer)
                assert greedy.select(aoi, post, features, greedy_rng).index == expected.action_id

    def test_requires_posterior(self, rng):
        policy = ProposedPolicy(enumerate_actions(1, 1, 0.01), PolicyParams(1.0, 1.0, DELTA, 0))
        with pytest.raises(ValueError):
            policy.select(0.003, None, None, rng)

    def test_negative_weight(self):
        with pytest.raises(ValueError):
            PolicyParams(1.0, -1.0, DELTA, 0)


class TestDefaultPolicy:
    def test_uniform_over_transmitting_actions(self, table_config, rng):
        actions = actions_for(table_config)
        counts = Counter(select_action_default(actions, rng).action_id for _ in range(100_000))
        assert set(counts) == set(range(1, 11))
        for action_id in range(1, 11):
            assert counts[action_id] / 100_000 == pytest.approx(0.1, abs=0.01)

    def test_policy_never_predicts(self, table_config, rng):
        choice = DefaultPolicy(actions_for(table_config)).select(0.003, None, None, rng)
        assert choice.prediction is None
        assert choice.index != 0


class TestBuildPolicy:
    @pytest.mark.parametrize(
        ("name", "policy_type", "learns"),
        [
            (PolicyName.DEFAULT, DefaultPolicy, False),
            (PolicyName.GREEDY, GreedyPolicy, True),
            (PolicyName.PROPOSED, ProposedPolicy, True),
        ],
    )
    def test_policy_from_config(self, table_config, name, policy_type, learns):
        cfg = table_config.model_copy(update={"policy": name})
        policy = build_policy(cfg, actions_for(cfg))
        assert type(policy) is policy_type
        assert policy.learns is learns
        assert policy.policy_id == name.value

    def test_greedy_drops_exploration(self, table_config):
        policy = build_policy(table_config.model_copy(update={"policy": PolicyName.GREEDY}), actions_for(table_config))
        assert policy.params.alpha_i == 0.0
        assert policy.params.alpha_c == table_config.alpha_c
