import numpy as np
import pytest

from subnetsim.core.config import PolicyName, ScenarioConfig


@pytest.fixture
def table_config() -> ScenarioConfig:
    return ScenarioConfig()


@pytest.fixture
def small_config() -> ScenarioConfig:
    """A few subnetworks on two RBs, short enough for the default test run."""
    return ScenarioConfig(
        num_subnetworks=4,
        num_rbs=2,
        window_size=40,
        warmup_slots=20,
        horizon_slots=100,
        num_runs=1,
        seed=7,
    )


@pytest.fixture
def single_link_config() -> ScenarioConfig:
    return ScenarioConfig(
        num_subnetworks=1,
        num_rbs=1,
        policy=PolicyName.DEFAULT,
        warmup_slots=10,
        horizon_slots=200,
        num_runs=1,
        seed=3,
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
