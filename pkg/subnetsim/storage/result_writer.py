import logging
import re
from pathlib import Path

import pandas as pd

from subnetsim.engine.models import SlotTrace

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "sweep_label",
    "policy",
    "sampling_rate_bps",
    "M",
    "alpha_i",
    "violation_probability",
    "avg_aoi_s",
    "rmse_s",
]
CCDF_COLUMNS = ["sweep_label", "policy", "threshold_s", "ccdf"]
FLOAT_FORMAT = "%.10g"


class ResultWriter:
    """Writes experiment tables as CSV files, fully rewritten on every call."""

    def __init__(self, output_dir: Path) -> None:
        output_dir.mkdir(parents=True, exist_ok=True)
        self.output_dir = output_dir

    @property
    def summary_path(self) -> Path:
        return self.output_dir / "summary.csv"

    @property
    def ccdf_path(self) -> Path:
        return self.output_dir / "ccdf.csv"

    def trace_path(self, sweep_label: str, policy: str) -> Path:
        safe_label = re.sub(r"[^A-Za-z0-9_.=-]", "_", sweep_label)
        return self.output_dir / f"trace_{safe_label}_{policy}.csv"

    def _write(self, frame: pd.DataFrame, path: Path) -> Path:
        frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        logger.info("Wrote %d rows to %s", len(frame), path)
        return path

    def write_summary(self, rows: list[dict]) -> Path:
        return self._write(pd.DataFrame(rows, columns=SUMMARY_COLUMNS), self.summary_path)

    def write_ccdf(self, rows: list[dict]) -> Path:
        return self._write(pd.DataFrame(rows, columns=CCDF_COLUMNS), self.ccdf_path)

    def write_trace(self, sweep_label: str, policy: str, trace: SlotTrace) -> Path:
        return self._write(trace.to_frame(), self.trace_path(sweep_label, policy))
