"""Tests for the configuration loader and the command-line entry point."""

import csv
import io
import json
import math
import pytest
from pathlib import Path

from cli.config_loader import load_config, parse_pair
from cli.parser import build_parser, parse_assignments
from main import main
from schemas.overlap import OverlapResult
from services.optimizer_service import optimizer_service
from utils.exceptions import ConfigError

QUIET = ["--log-level", "WARNING"]


def write_config(tmp_path: Path, text: str) -> Path:
    path = tmp_path / "run.ini"
    path.write_text(text, encoding="utf-8")
    return path


def read_csv(text: str):
    return list(csv.DictReader(io.StringIO(text)))


class TestConfigLoader:
    """Test INI loading and validation."""

    def test_sample_config(self, sample_config_file):
        """Test every section of the sample configuration is mapped."""
        config = load_config(sample_config_file)
        assert config.params.delta == 10.0
        assert config.gate.kind == "optimal"
        assert config.quadrature.abs_tol == 1e-6
        assert config.quadrature.truncation_halfwidth == 400.0
        assert config.sweep.range == (-6.0, 6.0)
        assert config.sweep.points == 5
        assert config.sweep.drop_y2 is True
        assert config.output.format == "json"
        assert config.levels is None

    def test_levels_section(self, tmp_path):
        """Test a level diagram with the optional ground energy omitted."""
        path = write_config(tmp_path, "[levels]\ne_u = 2000\ne_x = 990\ne_y = 1010\ngamma = 1\ngamma_u = 2\n")
        config = load_config(path)
        assert config.levels.e_0 == 0.0
        assert config.levels.gamma_u == 2.0

    def test_optimize_section(self, tmp_path):
        """Test free parameters and per-parameter bounds."""
        path = write_config(tmp_path, "[optimize]\nfree = tau1, tau2\ntau1 = 0 1.5\ntau2 = 0.1 2\ngrid_points = 3\n")
        config = load_config(path)
        assert config.optimize.free == ["tau1", "tau2"]
        assert config.optimize.bounds == {"tau1": (0.0, 1.5), "tau2": (0.1, 2.0)}
        assert config.optimize.grid_points == 3

    def test_unknown_key(self, tmp_path):
        """Test an unknown key names itself and its section."""
        path = write_config(tmp_path, "[params]\ndelta = 1\nbeta = 0\ng = 2\ngamma = 1\n")
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert excinfo.value.section == "params"
        assert "gamma" in excinfo.value.unknown_keys

    def test_unknown_section(self, tmp_path):
        """Test unknown sections are rejected."""
        path = write_config(tmp_path, "[solver]\nmethod = fast\n")
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert excinfo.value.section == "solver"

    def test_missing_key(self, tmp_path):
        """Test a referenced section must be complete."""
        path = write_config(tmp_path, "[params]\ndelta = 1\ng = 2\n")
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert "beta" in str(excinfo.value)

    def test_invalid_value(self, tmp_path):
        """Test schema violations are reported against their section."""
        path = write_config(tmp_path, "[params]\ndelta = 1\nbeta = 0\ng = -2\n")
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert excinfo.value.section == "params"

    def test_levels_and_params_conflict(self, tmp_path):
        """Test a run takes its point from one source only."""
        path = write_config(
            tmp_path,
            "[levels]\ne_u = 20\ne_x = 9\ne_y = 11\ngamma = 1\ngamma_u = 2\n[params]\ndelta = 1\nbeta = 0\ng = 2\n",
        )
        with pytest.raises(ConfigError):
            load_config(path)

    @pytest.mark.parametrize("line", ["gate = optimal", "gate = \"optimal\"", "kind = optimal"])
    def test_gate_key(self, tmp_path, line):
        """Test [gate] names the family with gate, or kind as an alias."""
        path = write_config(tmp_path, f"[gate]\n{line}\ntau1 = 0.5\n")
        config = load_config(path)
        assert config.gate.kind == "optimal"
        assert config.gate.tau1 == 0.5

    def test_gate_and_kind_disagree(self, tmp_path):
        """Test conflicting gate and kind keys are rejected."""
        path = write_config(tmp_path, "[gate]\ngate = delay\nkind = optimal\n")
        with pytest.raises(ConfigError) as excinfo:
            load_config(path)
        assert excinfo.value.section == "gate"

    def test_missing_file(self, tmp_path):
        """Test an unreadable file raises ConfigError."""
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.ini")

    def test_parse_pair(self):
        """Test range parsing with spaces or commas."""
        assert parse_pair("-1 2", "range") == (-1.0, 2.0)
        assert parse_pair("0.5, 3", "range") == (0.5, 3.0)
        with pytest.raises(ConfigError):
            parse_pair("1 2 3", "range")


class TestParser:
    """Test argument parsing."""

    def test_assignments(self):
        """Test KEY=VALUE parsing."""
        assert parse_assignments(["delta=10", "beta = 0"]) == {"delta": "10", "beta": "0"}
        with pytest.raises(ConfigError):
            parse_assignments(["delta"])

    def test_usage_error_raises(self):
        """Test usage errors raise ConfigError instead of exiting."""
        with pytest.raises(ConfigError):
            build_parser().parse_args(["gamma", "--gate", "teleport"])

    def test_y2_flags(self):
        """Test --drop-y2 and --keep-y2 share one destination defaulting to None."""
        parser = build_parser()
        assert parser.parse_args(["gamma"]).drop_y2 is None
        assert parser.parse_args(["gamma", "--drop-y2"]).drop_y2 is True
        assert parser.parse_args(["gamma", "--keep-y2"]).drop_y2 is False


class TestMain:
    """Test commands end to end."""

    def test_gamma_ungated(self, capsys):
        """Test gamma at resonance without a gate is 1/2 and matches the Peres negativity."""
        code = main(["gamma", "--params", "delta=0", "beta=0", "g=2", *QUIET])
        assert code == 0
        rows = read_csv(capsys.readouterr().out)
        assert len(rows) == 1
        assert float(rows[0]["gamma"]) == pytest.approx(0.5, abs=1e-5)
        # The coherence saturates the Cauchy-Schwarz bound; the density matrix clips onto it
        assert float(rows[0]["peres"]) == pytest.approx(min(float(rows[0]["gamma"]), 0.5), abs=1e-10)

    def test_gamma_to_file_echoes_stdout(self, tmp_path, capsys):
        """Test gamma writes its row to --out and still prints gamma and its error to stdout."""
        out = tmp_path / "gamma.csv"
        code = main(["gamma", "--params", "delta=1", "beta=0", "g=2", "--out", str(out), *QUIET])
        assert code == 0
        printed = read_csv(capsys.readouterr().out)
        written = read_csv(out.read_text(encoding="utf-8"))
        assert printed == written
        assert float(printed[0]["gamma"]) == pytest.approx(1.0 / (2.0 * math.sqrt(2.0)), abs=1e-4)
        assert float(printed[0]["err"]) >= 0.0

    def test_gamma_from_config(self, sample_config_file, capsys):
        """Test the optimal gate from a configuration file with y2 dropped."""
        code = main(["gamma", "--config", str(sample_config_file), "--format", "csv", *QUIET])
        assert code == 0
        rows = read_csv(capsys.readouterr().out)
        assert float(rows[0]["gamma"]) == pytest.approx(0.371227, abs=1e-4)
        assert float(rows[0]["re_y2"]) == 0.0

    def test_flags_override_config(self, sample_config_file, capsys):
        """Test --gate and --delta win over the configuration."""
        code = main(["gamma", "--config", str(sample_config_file), "--gate", "identity", "--delta", "0",
                     "--keep-y2", "--format", "csv", *QUIET])
        assert code == 0
        rows = read_csv(capsys.readouterr().out)
        assert float(rows[0]["gamma"]) == pytest.approx(0.5, abs=1e-5)

    def test_sweep_beta_json(self, sample_config_file, capsys):
        """Test a beta sweep written as JSON rows in grid order."""
        code = main(["sweep-beta", "--config", str(sample_config_file), *QUIET])
        assert code == 0
        rows = json.loads(capsys.readouterr().out)
        assert [row["axis"] for row in rows] == [-6.0, -3.0, 0.0, 3.0, 6.0]
        assert rows[2]["gamma"] == pytest.approx(0.371227, abs=1e-4)

    def test_profile_to_file(self, tmp_path):
        """Test wopt-profile writes a CSV file with one row per point."""
        out = tmp_path / "profile" / "wopt.csv"
        code = main(["wopt-profile", "--points", "11", "--range", "-1", "1", "--out", str(out), *QUIET])
        assert code == 0
        rows = read_csv(out.read_text(encoding="utf-8"))
        assert list(rows[0]) == ["kappa2", "arg_wopt", "linear", "difference"]
        assert len(rows) == 11
        assert float(rows[5]["arg_wopt"]) == pytest.approx(math.pi, abs=1e-10)

    @pytest.mark.parametrize("argv", [
        [],
        ["bogus"],
        ["gamma"],
        ["gamma", "--params", "delta"],
        ["gamma", "--params", "delta=1", "beta=0", "g=2", "omega=3"],
        ["gamma", "--params", "delta=1", "beta=0", "g=-2"],
        ["gamma", "--params", "delta=1", "beta=0", "g=2", "--tol", "-1"],
        ["gamma", "--params", "delta=1", "beta=0", "g=2", "--full"],
        ["sweep-g", "--range", "0", "1", "--points", "3"],
        ["wopt-profile", "--points", "1"],
        ["optimize-delays", "--free", "tau1", "slope1"],
    ])
    def test_input_errors(self, argv):
        """Test configuration and input errors exit with code 1."""
        assert main(argv + QUIET if argv else argv) == 1

    def test_missing_config_file(self, tmp_path):
        """Test an unreadable configuration exits with code 1."""
        assert main(["gamma", "--config", str(tmp_path / "absent.ini"), *QUIET]) == 1

    def test_unconverged_exit_code(self, tmp_path, capsys):
        """Test a result short of its tolerance exits with code 2 and still prints."""
        path = write_config(
            tmp_path,
            "[params]\ndelta = 3\nbeta = 2\ng = 0.5\n[quadrature]\nabs_tol = 1e-15\nmax_subdivisions = 1\n",
        )
        assert main(["gamma", "--config", str(path), *QUIET]) == 2
        assert read_csv(capsys.readouterr().out)

    def test_optimize_trace(self, capsys, monkeypatch):
        """Test optimize-delays emits the evaluation trace."""
        def evaluate(spec, parameters):
            gamma = 0.25 - (parameters["tau1"] - 0.5) ** 2
            return OverlapResult(y1=complex(4.0 * gamma), y2=0j, norm_denominator=4.0, gamma=max(gamma, 0.0),
                                 error_estimate=0.0, mode="leading")

        monkeypatch.setattr(optimizer_service, "_evaluate", evaluate)
        code = main(["optimize-delays", "--free", "tau1", "--range", "0", "1", "--grid-points", "3",
                     "--max-evaluations", "100", *QUIET])
        assert code == 0
        rows = read_csv(capsys.readouterr().out)
        assert list(rows[0]) == ["index", "stage", "tau1", "gamma", "err", "converged"]
        assert [row["stage"] for row in rows[:3]] == ["grid"] * 3
        assert max(float(row["gamma"]) for row in rows) == pytest.approx(0.25, abs=1e-6)

    @pytest.mark.slow
    def test_validate(self, capsys):
        """Test the oracle suite passes and prints one line per check."""
        code = main(["validate", "--samples", "3", *QUIET])
        out = capsys.readouterr().out
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 8
        assert all(line.startswith("PASS") for line in lines)
