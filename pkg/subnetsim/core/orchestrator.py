import logging
from collections.abc import Callable

from subnetsim.core.experiment import ExperimentResult, ExperimentSpec, PointResult
from subnetsim.engine.simulator import run_simulation
from subnetsim.reports import MarkdownGenerator
from subnetsim.storage import ResultWriter

logger = logging.getLogger(__name__)


class Orchestrator:
    """Runs experiments point by point and persists their tables and report."""

    def __init__(self, progress: bool = False) -> None:
        self.progress = progress
        self.report_generator = MarkdownGenerator()

    def run(
        self,
        spec: ExperimentSpec,
        on_point: Callable[[PointResult], None] | None = None,
    ) -> ExperimentResult:
        points = spec.points()
        writer = ResultWriter(spec.output_dir)
        result = ExperimentResult(spec=spec)

        for point in points:
            logger.info("Sweep point %s, policy %s", point.label, point.policy.value)
            trace, summary = run_simulation(point.config, progress=self.progress)
            point_result = PointResult(label=point.label, policy=point.policy, config=point.config, summary=summary)
            result.points.append(point_result)

            if spec.write_trace:
                writer.write_trace(point.label, point.policy.value, trace)
            if on_point is not None:
                on_point(point_result)

        self.save_result(result, writer)
        return result

    def save_result(self, result: ExperimentResult, writer: ResultWriter) -> None:
        writer.write_summary([point.summary_row() for point in result.points])
        writer.write_ccdf([row for point in result.points for row in point.ccdf_rows()])
        self.report_generator.generate(result, writer.output_dir / "report.md")
