from enum import Enum
from pathlib import Path
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from subnetsim.core.config import PolicyName, ScenarioConfig, apply_overrides
from subnetsim.core.errors import ExperimentError
from subnetsim.engine.models import MetricsSummary


class SweepAxis(str, Enum):
    NONE = "none"
    DATASET_SIZE = "dataset_size"
    ALPHA_I = "alpha_i"
    SAMPLING_RATE = "sampling_rate"
    POLICY = "policy"


SWEEP_FIELDS = {
    SweepAxis.DATASET_SIZE: "window_size",
    SweepAxis.ALPHA_I: "alpha_i",
    SweepAxis.SAMPLING_RATE: "sampling_rate_bps",
    SweepAxis.POLICY: "policy",
}

PRESETS: dict[str, tuple[SweepAxis, list[Any], list[PolicyName]]] = {
    "ccdf": (
        SweepAxis.SAMPLING_RATE,
        [1e6, 2e6],
        [PolicyName.DEFAULT, PolicyName.GREEDY, PolicyName.PROPOSED],
    ),
    "dataset-size": (SweepAxis.DATASET_SIZE, [50, 100, 200, 300, 400, 500], [PolicyName.PROPOSED]),
    "exploration": (SweepAxis.ALPHA_I, [0, 1, 10, 100, 1000], [PolicyName.PROPOSED]),
}


class SweepPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    label: str
    policy: PolicyName
    config: ScenarioConfig


class ExperimentSpec(BaseModel):
    """One experiment: a base config, an optional sweep axis and the policies to compare."""

    base_config: ScenarioConfig = Field(description="Validated scenario every point starts from")
    config_path: Path | None = Field(default=None, description="File the base config was loaded from")
    sweep_axis: SweepAxis = SweepAxis.NONE
    sweep_values: list[Any] = Field(default_factory=list)
    policies: list[PolicyName] = Field(default_factory=list, description="Empty means the base config's policy")
    output_dir: Path = Path("results")
    write_trace: bool = False

    def points(self) -> list[SweepPoint]:
        """Expand the experiment into validated (sweep point, policy) configurations.

        Raises:
            ExperimentError: If a sweep axis has no values
            ConfigValidationError: If a swept value breaks a config invariant
        """
        if self.sweep_axis is SweepAxis.NONE:
            settings = [("base", {})]
        else:
            if not self.sweep_values:
                raise ExperimentError(f"Sweep over {self.sweep_axis.value} needs at least one value")
            field = SWEEP_FIELDS[self.sweep_axis]
            settings = [
                (f"{self.sweep_axis.value}={format_value(value)}", {field: value})
                for value in self.sweep_values
            ]

        points = []
        for label, update in settings:
            cfg = apply_overrides(self.base_config, **update)
            if self.sweep_axis is SweepAxis.POLICY:
                policies = [cfg.policy]
            else:
                policies = self.policies or [cfg.policy]
            for policy in policies:
                points.append(SweepPoint(label=label, policy=policy, config=apply_overrides(cfg, policy=policy)))
        return points


def format_value(value: Any) -> str:
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, float) and value.is_integer():
        return str(int(value))
    return str(value)


def preset_spec(name: str, base_config: ScenarioConfig, output_dir: Path, write_trace: bool = False) -> ExperimentSpec:
    try:
        axis, values, policies = PRESETS[name]
    except KeyError as exc:
        raise ExperimentError(f"Unknown preset {name!r}; choose from {', '.join(PRESETS)}") from exc
    return ExperimentSpec(
        base_config=base_config,
        sweep_axis=axis,
        sweep_values=values,
        policies=policies,
        output_dir=output_dir,
        write_trace=write_trace,
    )


class PointResult(BaseModel):
    label: str
    policy: PolicyName
    config: ScenarioConfig
    summary: MetricsSummary

    def summary_row(self) -> dict[str, Any]:
        return {
            "sweep_label": self.label,
            "policy": self.policy.value,
            "sampling_rate_bps": self.config.sampling_rate_bps,
            "M": self.config.window_size,
            "alpha_i": self.config.alpha_i,
            "violation_probability": self.summary.violation_probability,
            "avg_aoi_s": self.summary.avg_aoi_s,
            "rmse_s": self.summary.rmse_s,
        }

    def ccdf_rows(self) -> list[dict[str, Any]]:
        return [
            {
                "sweep_label": self.label,
                "policy": self.policy.value,
                "threshold_s": point.threshold_s,
                "ccdf": point.probability,
            }
            for point in self.summary.ccdf
        ]


class ExperimentResult(BaseModel):
    spec: ExperimentSpec
    points: list[PointResult] = Field(default_factory=list)
