import math
from enum import Enum
from pathlib import Path
from typing import Any

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from subnetsim.core.errors import ConfigIssue, ConfigValidationError


class PolicyName(str, Enum):
    PROPOSED = "proposed"
    GREEDY = "greedy"
    DEFAULT = "default"


class ServiceOrder(str, Enum):
    FIFO = "fifo"
    LIFO = "lifo"


class ActionSet(str, Enum):
    SINGLE_RB = "single_rb"
    FULL_PRODUCT = "full_product"


class KFactorUnit(str, Enum):
    LINEAR = "linear"
    DB = "db"


class ScenarioConfig(BaseModel):
    """Physical, protocol and learning parameters of one simulated scenario."""

    model_config = ConfigDict(frozen=True, extra="forbid", use_enum_values=False)

    # deployment and mobility
    area_side_m: float = Field(20.0, description="Side of the square deployment area")
    num_subnetworks: int = Field(20, description="Number of subnetworks N")
    subnetwork_radius_m: float = Field(2.0, description="Subnetwork radius R_sub")
    min_sensor_distance_m: float = Field(1.0, description="Minimum sensor to AP distance d_min")
    speed_mps: float = Field(2.0, description="Constant subnetwork speed v")
    proximity_threshold_m: float = Field(1.5, description="Center distance that triggers a heading redraw")
    max_heading_redraws: int = Field(16, description="Redraw attempts before a subnetwork holds position")

    # radio
    num_rbs: int = Field(5, description="Number of resource blocks B")
    rb_bandwidth_hz: float = Field(10e6, description="Bandwidth W of one resource block")
    packet_size_bits: int = Field(800, description="Packet size L")
    num_power_levels: int = Field(3, description="Number of power levels K+1, including zero")
    max_power_dbm: float = Field(10.0, description="Maximum transmit power p per RB")
    noise_psd_dbm_hz: float = Field(-174.0, description="Noise power spectral density N0")
    carrier_freq_ghz: float = Field(6.0, description="Carrier frequency f_c")
    rician_k: float = Field(7.0, description="Rician K-factor")
    rician_k_unit: KFactorUnit = Field(KFactorUnit.LINEAR, description="Interpretation of rician_k")
    shadow_std_db: float = Field(7.0, description="Log-normal shadowing standard deviation")
    pl_intercept_db: float = 31.84
    pl_distance_slope: float = 21.5
    pl_frequency_slope: float = 19.0
    pl_min_distance_m: float = 1.0

    # traffic and AoI
    slot_duration_s: float = Field(0.003, description="Slot duration tau")
    aoi_threshold_s: float = Field(0.010, description="AoI threshold delta")
    sampling_rate_bps: float = Field(1e6, description="Sensor sampling rate")
    service_order: ServiceOrder = Field(ServiceOrder.FIFO, description="Sensor buffer service order")

    # learning and policy
    window_size: int = Field(300, description="Sliding dataset size M")
    ridge_lambda: float = Field(1.0, description="Prior precision lambda")
    alpha_c: float = Field(1.0, description="Exploitation weight")
    alpha_i: float = Field(10.0, description="Exploration weight")
    warmup_slots: int = Field(50, description="Slots of random allocation before learning policies act")
    action_set: ActionSet = Field(ActionSet.SINGLE_RB, description="Feasible power allocation set")
    policy: PolicyName = Field(PolicyName.PROPOSED, description="Resource allocation strategy")

    # experiment
    horizon_slots: int = Field(20000, description="Slots per Monte Carlo run T")
    num_runs: int = Field(5, description="Independent Monte Carlo runs")
    seed: int = Field(0, description="Master seed (unsigned 64-bit)")
    ccdf_max_multiple: int = Field(50, description="CCDF grid spans 0..ccdf_max_multiple slots")
    workers: int = Field(1, description="Worker processes for Monte Carlo runs")

    @property
    def arrival_rate(self) -> float:
        """Packets generated per slot, A = sampling_rate * tau / L."""
        return self.sampling_rate_bps * self.slot_duration_s / self.packet_size_bits

    @property
    def max_power_w(self) -> float:
        return dbm_to_watts(self.max_power_dbm)

    @property
    def power_levels_w(self) -> tuple[float, ...]:
        k = self.num_power_levels - 1
        return tuple(level * self.max_power_w / k for level in range(k + 1))

    @property
    def noise_power_w(self) -> float:
        """Noise power over one resource block."""
        return dbm_to_watts(self.noise_psd_dbm_hz) * self.rb_bandwidth_hz

    @property
    def rician_k_linear(self) -> float:
        if self.rician_k_unit is KFactorUnit.DB:
            return 10.0 ** (self.rician_k / 10.0)
        return self.rician_k

    @property
    def raw_feature_dim(self) -> int:
        return self.num_rbs + 1

    @property
    def feature_dim(self) -> int:
        d = self.raw_feature_dim
        return d + d * (d + 1) // 2

    @property
    def sigma2_floor(self) -> float:
        return (0.01 * self.slot_duration_s) ** 2

    @property
    def min_fit_samples(self) -> int:
        return self.feature_dim + 3

    @property
    def measured_slots(self) -> int:
        return self.horizon_slots - self.warmup_slots


DEFAULT_CONFIG = ScenarioConfig()


def dbm_to_watts(value_dbm: float) -> float:
    return 10.0 ** ((value_dbm - 30.0) / 10.0)


def validate_config(cfg: ScenarioConfig) -> ScenarioConfig:
    """Check every scenario invariant and report all violations at once.

    Args:
        cfg: Configuration to check

    Returns:
        The same configuration; derived quantities are available as properties

    Raises:
        ConfigValidationError: One issue per violated invariant
    """
    issues: list[ConfigIssue] = []

    def require(condition: bool, field: str, message: str) -> None:
        if not condition:
            issues.append(ConfigIssue(field, message))

    require(cfg.num_subnetworks >= 1, "num_subnetworks", "N ≥ 1")
    require(cfg.num_rbs >= 1, "num_rbs", "B ≥ 1")
    require(cfg.num_power_levels >= 2, "num_power_levels", "K_plus_1 ≥ 2")
    require(cfg.slot_duration_s > 0, "slot_duration_s", "τ > 0")
    require(cfg.aoi_threshold_s > 0, "aoi_threshold_s", "δ > 0")
    require(cfg.packet_size_bits > 0, "packet_size_bits", "L > 0")
    require(cfg.rb_bandwidth_hz > 0, "rb_bandwidth_hz", "W > 0")
    require(cfg.window_size >= 1, "window_size", "M ≥ 1")
    require(
        cfg.min_sensor_distance_m <= cfg.subnetwork_radius_m,
        "min_sensor_distance_m",
        f"d_min ≤ R_sub ({cfg.min_sensor_distance_m} m > {cfg.subnetwork_radius_m} m)",
    )
    require(cfg.min_sensor_distance_m >= 0, "min_sensor_distance_m", "d_min ≥ 0")
    require(
        2 * cfg.subnetwork_radius_m <= cfg.area_side_m,
        "subnetwork_radius_m",
        f"2·R_sub ≤ area_side_m ({2 * cfg.subnetwork_radius_m} m > {cfg.area_side_m} m)",
    )
    require(cfg.subnetwork_radius_m > 0, "subnetwork_radius_m", "R_sub > 0")
    require(cfg.alpha_c >= 0, "alpha_c", "α_c ≥ 0")
    require(cfg.alpha_i >= 0, "alpha_i", "α_i ≥ 0")
    require(cfg.ridge_lambda > 0, "ridge_lambda", "λ > 0")
    require(cfg.speed_mps >= 0, "speed_mps", "v ≥ 0")
    require(cfg.sampling_rate_bps >= 0, "sampling_rate_bps", "sampling_rate ≥ 0")
    require(cfg.carrier_freq_ghz > 0, "carrier_freq_ghz", "f_c > 0")
    require(cfg.rician_k >= 0 or cfg.rician_k_unit is KFactorUnit.DB, "rician_k", "K_rice ≥ 0")
    require(cfg.shadow_std_db >= 0, "shadow_std_db", "shadow_std ≥ 0")
    require(cfg.pl_min_distance_m > 0, "pl_min_distance_m", "path-loss distance floor > 0")
    require(cfg.proximity_threshold_m >= 0, "proximity_threshold_m", "proximity threshold ≥ 0")
    require(cfg.max_heading_redraws >= 1, "max_heading_redraws", "at least one redraw attempt")
    require(cfg.warmup_slots >= 0, "warmup_slots", "warmup_slots ≥ 0")
    require(cfg.horizon_slots > cfg.warmup_slots, "horizon_slots", "T > warmup_slots")
    require(cfg.num_runs >= 1, "num_runs", "num_runs ≥ 1")
    require(0 <= cfg.seed < 2**64, "seed", "seed must be an unsigned 64-bit integer")
    require(cfg.ccdf_max_multiple >= 1, "ccdf_max_multiple", "ccdf_max_multiple ≥ 1")
    require(cfg.workers >= 1, "workers", "workers ≥ 1")
    require(math.isfinite(cfg.max_power_dbm), "max_power_dbm", "p must be finite")

    if issues:
        raise ConfigValidationError(issues)
    return cfg


def build_config(data: dict[str, Any]) -> ScenarioConfig:
    """Build and validate a config from a flat mapping."""
    try:
        cfg = ScenarioConfig.model_validate(data)
    except ValidationError as exc:
        issues = [
            ConfigIssue(".".join(str(part) for part in error["loc"]) or "<root>", error["msg"])
            for error in exc.errors()
        ]
        raise ConfigValidationError(issues) from exc
    return validate_config(cfg)


def apply_overrides(cfg: ScenarioConfig, **overrides: Any) -> ScenarioConfig:
    """Return a validated copy of cfg with every non-None override applied."""
    updates = {key: value for key, value in overrides.items() if value is not None}
    if not updates:
        return validate_config(cfg)
    return build_config({**cfg.model_dump(), **updates})


def load_config(path: Path) -> ScenarioConfig:
    """Load a flat YAML key-value document into a validated config."""
    data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    if not isinstance(data, dict):
        raise ConfigValidationError([ConfigIssue("<root>", f"{path} must contain a key-value mapping")])
    return build_config(data)


def dump_config(cfg: ScenarioConfig, path: Path) -> None:
    path.write_text(yaml.safe_dump(cfg.model_dump(mode="json"), sort_keys=False), encoding="utf-8")
