import numpy as np

from subnetsim.core.errors import MetricsError
from subnetsim.engine.models import CcdfPoint, MetricsSummary, SlotTrace


def ccdf_thresholds(slot_duration: float, max_multiple: int, delta: float) -> np.ndarray:
    """Multiples k*tau for k = 0..max_multiple, with delta merged in."""
    grid = np.arange(max_multiple + 1) * slot_duration
    return np.unique(np.append(grid, delta))


def empirical_ccdf(samples: np.ndarray, thresholds: np.ndarray) -> np.ndarray:
    """Pr[X > x] for each threshold x."""
    ordered = np.sort(np.asarray(samples, dtype=float))
    at_or_below = np.searchsorted(ordered, thresholds, side="right")
    return 1.0 - at_or_below / ordered.size


def compute_metrics(
    trace: SlotTrace,
    delta: float,
    thresholds: np.ndarray | None = None,
    slot_duration: float | None = None,
    max_multiple: int = 50,
) -> MetricsSummary:
    """Aggregate AoI samples of a trace into CCDF, violation probability and mean.

    The default grid is multiples of tau up to ``max_multiple`` tau, with tau
    taken from ``slot_duration`` or, failing that, the smallest positive AoI
    sample. delta is always part of the grid.

    Raises:
        MetricsError: If the trace holds no rows
    """
    if len(trace) == 0:
        raise MetricsError("Cannot compute metrics of an empty trace")

    samples = trace.aoi
    if thresholds is None:
        if slot_duration is None:
            positive = samples[samples > 0]
            slot_duration = float(positive.min()) if positive.size else delta
        thresholds = ccdf_thresholds(slot_duration, max_multiple, delta)
    else:
        thresholds = np.unique(np.append(np.asarray(thresholds, dtype=float), delta))

    ccdf = empirical_ccdf(samples, thresholds)
    violation = float(ccdf[np.flatnonzero(thresholds == delta)[0]])
    rmse = compute_rmse(trace) if trace.has_predictions.any() else None
    return MetricsSummary(
        violation_probability=violation,
        avg_aoi_s=float(samples.mean()),
        rmse_s=rmse,
        ccdf=[CcdfPoint(threshold_s=float(x), probability=float(p)) for x, p in zip(thresholds, ccdf)],
        num_samples=len(trace),
    )


def compute_rmse(trace: SlotTrace) -> float:
    """RMSE between the taken action's predictive mean and the realized next AoI.

    Raises:
        MetricsError: If no row carries a prediction
    """
    mask = trace.has_predictions
    if not mask.any():
        raise MetricsError("Trace contains no prediction rows")
    errors = trace.mu[mask] - trace.next_aoi[mask]
    return float(np.sqrt(np.mean(errors**2)))
