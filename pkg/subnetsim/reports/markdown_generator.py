from collections import defaultdict
from pathlib import Path

from subnetsim.core.config import PolicyName
from subnetsim.core.experiment import ExperimentResult, PointResult


class MarkdownGenerator:
    """Generates Markdown experiment reports."""

    def generate(self, result: ExperimentResult, output_path: Path) -> None:
        content = self._build_content(result)
        output_path.write_text(content, encoding="utf-8")

    def _build_content(self, result: ExperimentResult) -> str:
        spec = result.spec
        base = spec.base_config
        lines = []

        lines.append("# AoI Experiment Report")
        lines.append("")
        lines.append(f"**Seed:** {base.seed}")
        lines.append(f"**Config:** {spec.config_path or 'built-in defaults'}")
        lines.append(f"**Sweep axis:** {spec.sweep_axis.value}")
        lines.append(f"**Runs x slots:** {base.num_runs} x {base.horizon_slots} (first {base.warmup_slots} slots excluded)")
        lines.append("")

        lines.append("## Summary")
        lines.append("")
        lines.append("| Sweep point | Policy | CCDF at δ (violation probability) | Average AoI (ms) | RMSE (ms) |")
        lines.append("|---|---|---|---|---|")
        for point in result.points:
            summary = point.summary
            rmse = "n/a" if summary.rmse_s is None else f"{summary.rmse_s * 1e3:.3f}"
            lines.append(
                f"| {point.label} | {point.policy.value} | {summary.violation_probability:.4g} "
                f"| {summary.avg_aoi_s * 1e3:.3f} | {rmse} |"
            )
        lines.append("")

        lines.append("## Reduction Versus Default")
        lines.append("")
        lines.extend(self._reduction_lines(result.points))

        lines.append("## Scenario")
        lines.append("")
        lines.append(f"- **Subnetworks:** {base.num_subnetworks} in {base.area_side_m:g} m x {base.area_side_m:g} m")
        lines.append(f"- **Resource blocks:** {base.num_rbs} x {base.rb_bandwidth_hz / 1e6:g} MHz at {base.carrier_freq_ghz:g} GHz")
        lines.append(f"- **Power levels:** {base.num_power_levels} up to {base.max_power_dbm:g} dBm")
        lines.append(f"- **AoI threshold:** {base.aoi_threshold_s * 1e3:g} ms with {base.slot_duration_s * 1e3:g} ms slots")
        lines.append(f"- **Learner:** M = {base.window_size}, λ = {base.ridge_lambda:g}, α_c = {base.alpha_c:g}, α_i = {base.alpha_i:g}")
        lines.append("")

        lines.append("## Observations")
        lines.append("")
        lines.extend(self._observations(result.points))
        return "\n".join(lines)

    def _reduction_lines(self, points: list[PointResult]) -> list[str]:
        by_label: dict[str, dict[PolicyName, PointResult]] = defaultdict(dict)
        for point in points:
            by_label[point.label][point.policy] = point

        lines = []
        for label, policies in by_label.items():
            default = policies.get(PolicyName.DEFAULT)
            if default is None:
                continue
            baseline = default.summary.violation_probability
            for policy, point in policies.items():
                if policy is PolicyName.DEFAULT:
                    continue
                if baseline > 0:
                    reduction = 1.0 - point.summary.violation_probability / baseline
                    lines.append(f"- **{label} / {policy.value}:** {reduction:.1%} lower violation probability")
                else:
                    lines.append(f"- **{label} / {policy.value}:** Default never violates the threshold")
        if not lines:
            lines.append("No Default baseline in this experiment.")
        lines.append("")
        return lines

    def _observations(self, points: list[PointResult]) -> list[str]:
        observations = []

        violating = [p for p in points if p.summary.violation_probability > 0]
        if not violating:
            observations.append("- No sweep point ever exceeded the AoI threshold")
        else:
            worst = max(points, key=lambda p: p.summary.violation_probability)
            best = min(points, key=lambda p: p.summary.violation_probability)
            observations.append(f"- Lowest violation probability: {best.label} / {best.policy.value}")
            observations.append(f"- Highest violation probability: {worst.label} / {worst.policy.value}")

        learned = [p for p in points if p.summary.rmse_s is not None]
        if learned:
            sharpest = min(learned, key=lambda p: p.summary.rmse_s)
            observations.append(f"- Most accurate AoI prediction: {sharpest.label} / {sharpest.policy.value}")

        observations.append("")
        return observations
