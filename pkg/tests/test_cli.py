import pandas as pd
import pytest
from typer.testing import CliRunner

from subnetsim.cli import app, parse_sweep_values
from subnetsim.core.config import DEFAULT_CONFIG, PolicyName, dump_config, load_config
from subnetsim.core.errors import ExperimentError
from subnetsim.core.experiment import SweepAxis

runner = CliRunner()


@pytest.fixture
def config_file(small_config, tmp_path):
    path = tmp_path / "scenario.yaml"
    dump_config(small_config, path)
    return path


class TestParseSweepValues:
    def test_dataset_sizes_are_ints(self):
        assert parse_sweep_values(SweepAxis.DATASET_SIZE, "50, 100,200") == [50, 100, 200]

    def test_rates_are_floats(self):
        assert parse_sweep_values(SweepAxis.SAMPLING_RATE, "1e6,2e6") == [1e6, 2e6]

    def test_policies(self):
        assert parse_sweep_values(SweepAxis.POLICY, "default,proposed") == [PolicyName.DEFAULT, PolicyName.PROPOSED]

    def test_missing_values(self):
        assert parse_sweep_values(SweepAxis.ALPHA_I, None) == []

    def test_bad_value(self):
        with pytest.raises(ExperimentError):
            parse_sweep_values(SweepAxis.DATASET_SIZE, "50,lots")


class TestRunCommand:
    def test_single_experiment(self, config_file, tmp_path):
        out = tmp_path / "results"
        result = runner.invoke(app, ["run", "-c", str(config_file), "-o", str(out)])
        assert result.exit_code == 0, result.output
        assert "base [proposed]" in result.output
        assert (out / "summary.csv").exists()
        assert (out / "ccdf.csv").exists()
        assert (out / "report.md").exists()
        assert not list(out.glob("trace_*.csv"))

    def test_policy_comparison_sweep(self, config_file, tmp_path):
        out = tmp_path / "results"
        args = [
            "run", "-c", str(config_file), "-o", str(out),
            "--sweep", "sampling_rate", "--values", "1e6,2e6",
            "-p", "default", "-p", "greedy", "-p", "proposed",
        ]
        result = runner.invoke(app, args)
        assert result.exit_code == 0, result.output
        ccdf = pd.read_csv(out / "ccdf.csv")
        assert ccdf.groupby(["sweep_label", "policy"]).ngroups == 6

    def test_dataset_size_sweep(self, config_file, tmp_path):
        out = tmp_path / "results"
        result = runner.invoke(app, ["run", "-c", str(config_file), "-o", str(out), "--sweep", "dataset_size", "--values", "20,40"])
        assert result.exit_code == 0, result.output
        summary = pd.read_csv(out / "summary.csv")
        assert summary["M"].tolist() == [20, 40]
        assert summary["rmse_s"].notna().all()

    def test_trace_flag(self, config_file, tmp_path):
        out = tmp_path / "results"
        result = runner.invoke(app, ["run", "-c", str(config_file), "-o", str(out), "--trace", "-p", "default"])
        assert result.exit_code == 0, result.output
        assert (out / "trace_base_default.csv").exists()

    def test_byte_identical_reruns(self, config_file, tmp_path):
        outputs = []
        for name in ("first", "second"):
            out = tmp_path / name
            result = runner.invoke(app, ["run", "-c", str(config_file), "-o", str(out), "--seed", "11"])
            assert result.exit_code == 0, result.output
            outputs.append(((out / "summary.csv").read_bytes(), (out / "ccdf.csv").read_bytes()))
        assert outputs[0] == outputs[1]

    def test_invalid_config_lists_errors(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("min_sensor_distance_m: 3.0\nnum_rbs: 0\n", encoding="utf-8")
        result = runner.invoke(app, ["run", "-c", str(path), "-o", str(tmp_path / "out")])
        assert result.exit_code == 1
        assert "min_sensor_distance_m" in result.output
        assert "num_rbs" in result.output
        assert not (tmp_path / "out").exists()

    def test_sweep_without_values(self, config_file, tmp_path):
        result = runner.invoke(app, ["run", "-c", str(config_file), "-o", str(tmp_path / "out"), "--sweep", "alpha_i"])
        assert result.exit_code == 1

    def test_unwritable_output(self, config_file, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("", encoding="utf-8")
        result = runner.invoke(app, ["run", "-c", str(config_file), "-o", str(blocker / "out")])
        assert result.exit_code == 2


class TestOtherCommands:
    def test_reproduce_exploration(self, config_file, tmp_path):
        out = tmp_path / "fig"
        result = runner.invoke(app, ["reproduce", "exploration", "-c", str(config_file), "-o", str(out)])
        assert result.exit_code == 0, result.output
        summary = pd.read_csv(out / "summary.csv")
        assert summary["alpha_i"].tolist() == [0, 1, 10, 100, 1000]

    def test_reproduce_unknown_preset(self, tmp_path):
        result = runner.invoke(app, ["reproduce", "nothing", "-o", str(tmp_path / "out")])
        assert result.exit_code == 1

    def test_validate(self, config_file):
        result = runner.invoke(app, ["validate", str(config_file)])
        assert result.exit_code == 0
        assert "is valid" in result.output

    def test_validate_reports_issues(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("window_size: 0\n", encoding="utf-8")
        result = runner.invoke(app, ["validate", str(path)])
        assert result.exit_code == 1
        assert "window_size" in result.output

    def test_init_config(self, tmp_path):
        path = tmp_path / "default.yaml"
        result = runner.invoke(app, ["init-config", str(path)])
        assert result.exit_code == 0
        assert load_config(path) == DEFAULT_CONFIG
        again = runner.invoke(app, ["init-config", str(path)])
        assert again.exit_code == 1
