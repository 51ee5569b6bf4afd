"""
Tests for file round trips, CLI parsing helpers and the main() entry point.
"""

import json
import logging
import math

import numpy as np
import pytest

import main as cli
from src.core.exceptions import ExportError, GeometryError, ValidationError
from src.core.models import Configuration, ConfigurationMode, DiscreteMeasure, PlanePoint
from src.geometry.curves import Circle, VerticalSegment
from src.utils import (
    FileManager, get_logger, log_stage, parse_instance, parse_int_list, parse_point, render_svg, setup_logging,
)


def run_cli(tmp_path, *args):
    """main() with logging kept at WARNING and the log file inside tmp_path."""
    return cli.main(["--log-level", "WARNING", "--log-file", str(tmp_path / "run.log"), *args])


def tab_rows(text):
    rows = [line.split("\t") for line in text.splitlines() if "\t" in line]
    return rows[0], rows[1:]


def json_lines(text):
    return [json.loads(line) for line in text.splitlines() if line.startswith("{")]


class TestFileManager:

    def test_surface_configuration_round_trip(self, tmp_path, torus_circle, rng):
        config = Configuration(torus_circle, rng.uniform(-np.pi, np.pi, 12), rng.uniform(0.0, 2 * np.pi, 12),
                               ConfigurationMode.SURFACE_3D)
        fm = FileManager(tmp_path)
        outputs = fm.save_configuration(config)
        assert set(outputs) == {"configuration", "configuration_csv"}

        loaded = fm.load_configuration(outputs["configuration"])
        assert loaded.mode is ConfigurationMode.SURFACE_3D
        assert loaded.curve.to_spec() == torus_circle.to_spec()
        assert np.array_equal(loaded.t, config.t)
        assert np.array_equal(loaded.phi, config.phi)

    def test_curve_configuration_has_no_angles(self, tmp_path, segment):
        config = Configuration(segment, np.linspace(0.0, 1.0, 5))
        fm = FileManager(tmp_path)
        loaded = fm.load_configuration(fm.save_configuration(config, "seg")["configuration"])
        assert loaded.mode is ConfigurationMode.CURVE_1D
        assert loaded.phi is None
        assert np.array_equal(loaded.t, config.t)

    def test_measure_round_trip(self, tmp_path, rng):
        weights = rng.uniform(0.0, 1.0, 30)
        measure = DiscreteMeasure(nodes=np.column_stack([rng.uniform(1, 5, 30), rng.normal(size=30)]),
                                  weights=weights / weights.sum(), params=np.linspace(-1.0, 1.0, 30))
        fm = FileManager(tmp_path)
        loaded = fm.load_measure(fm.save_measure(measure))
        assert np.array_equal(loaded.nodes, measure.nodes)
        assert np.array_equal(loaded.weights, measure.weights)
        assert np.array_equal(loaded.params, measure.params)

    def test_measure_without_params(self, tmp_path):
        measure = DiscreteMeasure(nodes=np.array([[1.0, 0.0], [2.0, 0.0]]), weights=np.array([0.5, 0.5]))
        fm = FileManager(tmp_path)
        assert fm.load_measure(fm.save_measure(measure, "plain.csv")).params is None

    def test_missing_file(self, tmp_path):
        fm = FileManager(tmp_path)
        with pytest.raises(ExportError):
            fm.load_measure(tmp_path / "absent.csv")
        with pytest.raises(ExportError):
            fm.load_configuration(tmp_path / "absent.json")

    def test_bad_weights(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("t,x,y,weight\n0.0,1.0,0.0,1.5\n0.1,1.0,0.1,-0.5\n")
        with pytest.raises(ExportError):
            FileManager(tmp_path).load_measure(path)

    def test_missing_columns(self, tmp_path):
        path = tmp_path / "short.csv"
        path.write_text("x,y\n1.0,0.0\n")
        with pytest.raises(ExportError):
            FileManager(tmp_path).load_measure(path)

    def test_malformed_configuration(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text(json.dumps({"mode": "curve"}))
        with pytest.raises(ExportError):
            FileManager(tmp_path).load_configuration(path)

    def test_curve_round_trip(self, tmp_path):
        curve = Circle((3.0, 0.5), 1.0, (-1.0, 1.0))
        fm = FileManager(tmp_path)
        assert fm.load_curve(fm.save_curve(curve, "curve.json")).to_spec() == curve.to_spec()


class TestLogging:

    def test_log_file_is_created(self, tmp_path):
        log_file = tmp_path / "nested" / "run.log"
        setup_logging("DEBUG", log_file)
        get_logger("revolve.test").info("hello")
        assert log_file.exists()

    def test_log_stage(self, caplog):
        logger = get_logger("revolve.stage")
        with caplog.at_level(logging.DEBUG, logger="revolve.stage"):
            with log_stage(logger, "work"):
                pass
        messages = [record.getMessage() for record in caplog.records if record.name == "revolve.stage"]
        assert messages[0] == "🔄 work"
        assert messages[1].startswith("⏱️ work: ")


class TestParsers:

    def test_point(self):
        assert parse_point("2,0") == PlanePoint(2.0, 0.0)
        with pytest.raises(ValidationError):
            parse_point("2")
        with pytest.raises(ValidationError):
            parse_point("a,b")

    def test_int_list(self):
        assert parse_int_list("10,50,100") == [10, 50, 100]
        with pytest.raises(ValidationError):
            parse_int_list("10,x")
        with pytest.raises(ValidationError):
            parse_int_list("")

    def test_instances(self):
        curves, label = parse_instance("segment:2,0,1")
        assert label == "segment:2,0,1"
        assert isinstance(curves[0], VerticalSegment)

        arcs, _ = parse_instance("arc:3,0,1,0.5,1.5")
        assert [tuple(arc.domain) for arc in arcs] == [(-1.5, -0.5), (0.5, 1.5)]

    def test_instance_errors(self):
        with pytest.raises(ValidationError):
            parse_instance("torus:3,1")
        with pytest.raises(ValidationError):
            parse_instance("circle:3,0")
        with pytest.raises(GeometryError):
            parse_instance("arc:3,0,1,1.5,0.5")
        with pytest.raises(GeometryError):
            parse_instance("circle:0.5,0,1")


class TestKernelEval:

    def test_k_value(self, tmp_path, capsys):
        assert run_cli(tmp_path, "kernel-eval", "--kernel", "K", "--z", "2,0", "--w", "1,0") == cli.EXIT_OK
        header, rows = tab_rows(capsys.readouterr().out)
        assert header == ["kernel", "z", "w", "value"]
        assert float(rows[0][-1]) == pytest.approx(-math.log(2.0), abs=1e-15)

    def test_kinf_diagonal(self, tmp_path, capsys):
        run_cli(tmp_path, "kernel-eval", "--kernel", "Kinf", "--z", "1,0", "--w", "1,0")
        _, rows = tab_rows(capsys.readouterr().out)
        assert float(rows[0][-1]) == -2.0

    def test_oracle(self, tmp_path, capsys):
        run_cli(tmp_path, "kernel-eval", "--kernel", "K", "--z", "2,0.3", "--w", "1,0", "3,1", "--oracle")
        header, rows = tab_rows(capsys.readouterr().out)
        assert header[-2:] == ["oracle", "delta"]
        assert len(rows) == 2
        for row in rows:
            assert float(row[-1]) <= 1e-10

    def test_singular_pair(self, tmp_path, capsys):
        assert run_cli(tmp_path, "kernel-eval", "--kernel", "K", "--z", "0,1", "--w", "0,1") == cli.EXIT_OK
        _, rows = tab_rows(capsys.readouterr().out)
        assert rows[0][-1].startswith("singular")

    def test_bad_kernel(self, tmp_path):
        assert run_cli(tmp_path, "kernel-eval", "--kernel", "riesz:x", "--z", "1,0", "--w", "2,0") == cli.EXIT_ERROR


class TestOptimizeCommand:

    def test_single_point_rejected(self, tmp_path):
        status = run_cli(tmp_path, "optimize", "--kernel", "K", "--instance", "segment:2,0,1", "--N", "1",
                         "--out", str(tmp_path / "run"))
        assert status == cli.EXIT_ERROR

    def test_outputs_repeat_exactly(self, tmp_path):
        args = ["optimize", "--kernel", "K", "--instance", "segment:2,0,1", "--N", "5", "--seed", "7",
                "--restarts", "2", "--max-iter", "2000"]
        first, second = tmp_path / "a", tmp_path / "b"
        assert run_cli(tmp_path, *args, "--out", str(first)) in (cli.EXIT_OK, cli.EXIT_NOT_CONVERGED)
        assert run_cli(tmp_path, *args, "--out", str(second)) in (cli.EXIT_OK, cli.EXIT_NOT_CONVERGED)

        for name in ("configuration.csv", "configuration.json", "energy_report.json"):
            assert (first / name).read_bytes() == (second / name).read_bytes()

        manifest = json.loads((first / "manifest.json").read_text())
        assert manifest["size"] == 5
        assert manifest["seed"] == 7
        assert manifest["kernel"] == "K"
        assert manifest["outputs"]["configuration_csv"] == "configuration.csv"
        assert manifest["command"][:1] == ["--log-level"]

    def test_curve_file_input(self, tmp_path):
        curve_path = FileManager(tmp_path).save_curve(Circle((3.0, 0.0), 1.0), "torus.json")
        status = run_cli(tmp_path, "optimize", "--kernel", "log3d", "--curve", curve_path, "--N", "4",
                         "--restarts", "1", "--max-iter", "500", "--out", str(tmp_path / "surface"))
        assert status in (cli.EXIT_OK, cli.EXIT_NOT_CONVERGED)
        config = FileManager(tmp_path).load_configuration(tmp_path / "surface" / "configuration.json")
        assert config.mode is ConfigurationMode.SURFACE_3D
        assert config.N == 4


class TestEquilibriumCommand:

    def test_segment_kinf(self, tmp_path):
        out = tmp_path / "eq"
        status = run_cli(tmp_path, "equilibrium", "--kernel", "Kinf", "--instance", "segment:2,0,1",
                         "--nodes", "50", "--out", str(out))
        assert status == cli.EXIT_OK

        report = json.loads((out / "equilibrium_report.json").read_text())
        assert report["support"]["two_point_degenerate"] is True
        assert report["J"] == pytest.approx(-4.5, abs=1e-8)

        manifest = json.loads((out / "manifest.json").read_text())
        assert set(manifest) >= {"command", "curve_spec", "kernel", "size", "version", "started_at",
                                 "finished_at", "outputs"}
        assert manifest["outputs"] == {"measure": "measure.csv", "report": "equilibrium_report.json"}

        measure = FileManager(out).load_measure(out / "measure.csv")
        assert measure.n == 50
        assert measure.weights.sum() == pytest.approx(1.0, abs=1e-12)


class TestVerifyCommand:

    def test_monotone(self, tmp_path, capsys):
        out = tmp_path / "checks"
        status = run_cli(tmp_path, "verify", "--check", "monotone", "--kernel", "Kinf", "--out", str(out))
        assert status == cli.EXIT_OK
        reports = json_lines(capsys.readouterr().out)
        assert len(reports) == 1
        assert reports[0]["check"] == "monotone"
        assert reports[0]["pass"] is True
        assert json.loads((out / "00_monotone.json").read_text()) == reports[0]

    def test_unknown_check(self, tmp_path):
        assert run_cli(tmp_path, "verify", "--check", "riemann") == cli.EXIT_ERROR

    def test_unknown_instance(self, tmp_path):
        assert run_cli(tmp_path, "verify", "--check", "kappa", "--instance", "cube:1") == cli.EXIT_ERROR


class TestPlotCommand:

    def test_measure_svg_is_deterministic(self, tmp_path):
        measure = DiscreteMeasure(nodes=np.array([[2.0, 0.0], [2.0, 0.5], [2.0, 1.0]]),
                                  weights=np.array([0.4, 0.2, 0.4]))
        source = FileManager(tmp_path).save_measure(measure)
        first, second = tmp_path / "a.svg", tmp_path / "b.svg"
        assert run_cli(tmp_path, "plot", "--input", source, "--out", str(first), "--projection") == cli.EXIT_OK
        assert run_cli(tmp_path, "plot", "--input", source, "--out", str(second), "--projection") == cli.EXIT_OK
        assert first.read_bytes() == second.read_bytes()
        assert b"<svg" in first.read_bytes()

    def test_configuration_svg(self, tmp_path, torus_circle):
        config = Configuration(torus_circle, np.linspace(-1.0, 1.0, 6), np.linspace(0.0, 3.0, 6),
                               ConfigurationMode.SURFACE_3D)
        fm = FileManager(tmp_path)
        source = fm.save_configuration(config)["configuration"]
        assert run_cli(tmp_path, "plot", "--input", source, "--out", str(tmp_path / "c.svg")) == cli.EXIT_OK
        assert (tmp_path / "c.svg").exists()

    def test_zero_weights(self, tmp_path):
        with pytest.raises(ValidationError):
            render_svg(np.array([[1.0, 0.0]]), np.array([0.0]), tmp_path / "empty.svg")

    def test_malformed_input(self, tmp_path):
        source = tmp_path / "junk.csv"
        source.write_text("not,a,measure\n1,2,3\n")
        assert run_cli(tmp_path, "plot", "--input", str(source), "--out", str(tmp_path / "j.svg")) == cli.EXIT_ERROR
