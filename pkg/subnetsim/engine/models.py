from dataclasses import dataclass, fields

import numpy as np
import pandas as pd
from pydantic import BaseModel, Field


@dataclass(frozen=True)
class SlotTrace:
    """Per (run, slot, subnetwork) records, one array entry per row.

    ``mu`` and ``var`` are NaN on rows where no prediction was made (Default
    policy, warmup). ``interference`` has one column per resource block.
    """

    run: np.ndarray
    slot: np.ndarray
    subnetwork: np.ndarray
    aoi: np.ndarray
    action_id: np.ndarray
    mu: np.ndarray
    var: np.ndarray
    next_aoi: np.ndarray
    rate: np.ndarray
    interference: np.ndarray

    def __len__(self) -> int:
        return int(self.aoi.shape[0])

    @property
    def num_rbs(self) -> int:
        return int(self.interference.shape[1])

    @property
    def has_predictions(self) -> np.ndarray:
        return ~np.isnan(self.mu)

    def select(self, mask: np.ndarray) -> "SlotTrace":
        return SlotTrace(**{f.name: getattr(self, f.name)[mask] for f in fields(self)})

    def from_slot(self, first_slot: int) -> "SlotTrace":
        return self.select(self.slot >= first_slot)

    @classmethod
    def concat(cls, traces: list["SlotTrace"]) -> "SlotTrace":
        if not traces:
            raise ValueError("Nothing to concatenate")
        return cls(**{f.name: np.concatenate([getattr(t, f.name) for t in traces]) for f in fields(cls)})

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame({
            "run": self.run,
            "slot": self.slot,
            "subnetwork": self.subnetwork,
            "aoi_s": self.aoi,
            "action_id": self.action_id,
            "mu_s": self.mu,
            "var_s2": self.var,
            "next_aoi_s": self.next_aoi,
            "rate_pkts": self.rate,
        })
        for b in range(self.num_rbs):
            frame[f"interference_rb{b}_w"] = self.interference[:, b]
        return frame


class CcdfPoint(BaseModel):
    threshold_s: float = Field(description="AoI threshold x in seconds")
    probability: float = Field(description="Empirical Pr[AoI > x]")


class MetricsSummary(BaseModel):
    violation_probability: float = Field(description="Fraction of AoI samples above delta")
    avg_aoi_s: float = Field(description="Sample mean of the AoI")
    rmse_s: float | None = Field(default=None, description="Prediction RMSE, None without predictions")
    ccdf: list[CcdfPoint] = Field(default_factory=list)
    num_samples: int = Field(description="AoI samples aggregated")

    def ccdf_at(self, threshold_s: float) -> float:
        for point in self.ccdf:
            if point.threshold_s == threshold_s:
                return point.probability
        raise KeyError(f"No CCDF point at {threshold_s}")
