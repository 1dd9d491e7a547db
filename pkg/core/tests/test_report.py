"""
Tests for run orchestration, report rendering and the launcher.
"""

import contextlib
import csv
import io
import json
import math
import os
import tempfile
import unittest
from dataclasses import replace
from pathlib import Path

import pytest

from core.cli import main
from core.errors import ReportWriteError, ResourceError, ValidationError
from core.grids import COMPLEMENT
from core.report import (
    POINT_FIELDS,
    emit_report,
    render_csv,
    render_json,
    run_verification,
)
from core.run_config import RunConfig


def run_quietly(argv):
    stdout = io.StringIO()
    with contextlib.redirect_stdout(stdout):
        code = main(argv)
    return code, stdout.getvalue()


class TestRunVerification(unittest.TestCase):
    """Single, grid and demo runs."""

    def test_orthogonal_single_point_passes_with_zero_gap(self):
        """Test an orthogonal point passes with zero gap."""
        report = run_verification(RunConfig(mode="single", c=COMPLEMENT))
        self.assertEqual(len(report.points), 1)
        values = report.points[0].values
        self.assertLessEqual(values["trace_distance"], 1e-10)
        self.assertAlmostEqual(values["gap"], 0.0, delta=1e-12)
        self.assertEqual(values["condition_class"], "ORTHOGONAL_STATES")
        self.assertTrue(report.passed)

    def test_violating_single_point(self):
        """Test a violating point passes with a positive gap."""
        report = run_verification(RunConfig(mode="single", theta=math.pi / 2))
        values = report.points[0].values
        self.assertEqual(values["condition_class"], "VIOLATION")
        self.assertGreater(values["gap"], 1e-6)
        self.assertAlmostEqual(values["gap"], values["gap_formula"], delta=1e-10)
        self.assertTrue(report.passed)

    def test_demo_mode(self):
        """Test demo mode runs the copier."""
        report = run_verification(RunConfig(mode="demo"))
        fidelities = [case.copy_fidelity for case in report.demo.cases]
        self.assertAlmostEqual(fidelities[0], 1.0, delta=1e-12)
        self.assertAlmostEqual(fidelities[1], 1.0, delta=1e-12)
        self.assertAlmostEqual(fidelities[2], 0.5, delta=1e-10)
        self.assertTrue(report.passed)

    def test_smoke_grid_and_linearity_sweep(self):
        """Test the smoke grid and its linearity sweep."""
        report = run_verification(RunConfig(mode="grid", grid="smoke"))
        summary = report.summary()
        self.assertEqual(summary["points"], 4)
        self.assertEqual(summary["condition_counts"],
                         {"ORTHOGONAL_STATES": 1, "ORTHOGONAL_PROGRAMS": 1, "DEGENERATE": 1, "VIOLATION": 1})
        self.assertLessEqual(summary["linearity_sweep_residual"], 1e-10)
        self.assertTrue(summary["pass"])

    def test_vanishing_state_overlap_single_point(self):
        """Test a point with |p| = 1e-11 passes and is marked unresolved."""
        report = run_verification(RunConfig(mode="single", a=1.0, c=1e-11, q_mag=0.5, r_mag=0.5))
        values = report.points[0].values
        self.assertEqual(values["condition_class"], "VIOLATION")
        self.assertIn("UNRESOLVED", values["notes"])
        self.assertTrue(report.passed, values["failures"])

    def test_point_next_to_the_boundary_band(self):
        """Test a point with |p||q||r| just below 1 - 1e-10 passes and is marked unresolved."""
        report = run_verification(RunConfig(mode="single", a=1.0, c=0.99999999985, q_mag=1.0, r_mag=1.0))
        values = report.points[0].values
        self.assertEqual(values["condition_class"], "VIOLATION")
        self.assertEqual(values["notes"], ["UNRESOLVED"])
        self.assertTrue(report.passed, values["failures"])

    def test_oversized_machine_is_refused_before_any_point(self):
        """Test single and grid runs refuse machine sizes over the dimension cap."""
        for config in (RunConfig(mode="single", m=12, n=26),
                       RunConfig(mode="grid", grid="smoke", m=7, n=16)):
            with self.subTest(mode=config.mode, m=config.m):
                with self.assertRaises(ResourceError):
                    run_verification(config)

    def test_point_errors_name_the_point(self):
        """Test point errors name the offending point."""
        with self.assertRaises(ValidationError) as ctx:
            run_verification(RunConfig(mode="single", a=1.5))
        self.assertIn("a=1.5", str(ctx.exception))

    def test_reports_are_deterministic(self):
        """Test repeated runs render identical reports."""
        config = RunConfig(mode="grid", grid="smoke", seed=3)
        self.assertEqual(render_json(run_verification(config)), render_json(run_verification(config)))
        self.assertEqual(render_csv(run_verification(config)), render_csv(run_verification(config)))


class TestEmitReport(unittest.TestCase):
    """JSON and CSV rendering and file output."""

    def setUp(self):
        self.tmpdir = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmpdir.cleanup)
        self.report = run_verification(RunConfig(mode="grid", grid="smoke"))

    def test_json_layout(self):
        """Test the JSON key order."""
        payload = json.loads(render_json(self.report))
        self.assertEqual(list(payload), ["summary", "points"])
        self.assertEqual(list(payload["summary"])[-1], "pass")
        self.assertEqual(list(payload["points"][0]), list(POINT_FIELDS))

    def test_json_and_csv_carry_the_same_values(self):
        """Test JSON and CSV carry the same values."""
        points = json.loads(render_json(self.report))["points"]
        rows = list(csv.DictReader(io.StringIO(render_csv(self.report))))
        self.assertEqual(len(rows), len(points))
        for point, row in zip(points, rows):
            for name in POINT_FIELDS:
                with self.subTest(field=name):
                    value = point[name]
                    if isinstance(value, bool):
                        self.assertEqual(row[name], "true" if value else "false")
                    elif isinstance(value, float):
                        self.assertEqual(float(row[name]), value)
                    elif isinstance(value, list):
                        self.assertEqual(row[name], ";".join(value))
                    else:
                        self.assertEqual(row[name], str(value))

    def test_numbers_are_rounded_to_twelve_digits(self):
        """Test numbers are rounded to twelve significant digits."""
        payload = json.loads(render_json(run_verification(RunConfig(mode="single"))))
        value = payload["points"][0]["lambda_before"]
        self.assertEqual(value, float(f"{value:.12g}"))

    def test_one_point_gives_one_csv_row(self):
        """Test one point gives a header and one CSV row."""
        report = run_verification(RunConfig(mode="single"))
        lines = render_csv(report).splitlines()
        self.assertEqual(len(lines), 2)
        self.assertEqual(lines[0].split(","), list(POINT_FIELDS))

    def test_empty_grid(self):
        """Test an empty grid gives an empty passing report."""
        grid = Path(self.tmpdir.name) / "empty.json"
        grid.write_text(json.dumps({"q_mag": []}), encoding="utf-8")
        report = run_verification(RunConfig(mode="grid", grid=str(grid)))
        payload = json.loads(render_json(report))
        self.assertEqual(payload["summary"]["points"], 0)
        self.assertTrue(payload["summary"]["pass"])
        self.assertEqual(len(render_csv(report).splitlines()), 1)

    def test_file_output(self):
        """Test file output leaves only the report behind."""
        path = Path(self.tmpdir.name) / "report.csv"
        emit_report(self.report, "csv", path)
        self.assertEqual(path.read_text(encoding="utf-8"), render_csv(self.report))
        self.assertEqual(os.listdir(self.tmpdir.name), ["report.csv"])

    def test_stdout_output(self):
        """Test stdout output matches the rendered report."""
        stdout = io.StringIO()
        with contextlib.redirect_stdout(stdout):
            emit_report(self.report, "json")
        self.assertEqual(stdout.getvalue(), render_json(self.report))

    def test_unwritable_destination_leaves_nothing_behind(self):
        """Test an unwritable destination leaves no file behind."""
        path = Path(self.tmpdir.name) / "missing" / "report.json"
        with self.assertRaises(ReportWriteError):
            emit_report(self.report, "json", path)
        self.assertEqual(os.listdir(self.tmpdir.name), [])

    def test_demo_report(self):
        """Test the demo report layout."""
        report = run_verification(RunConfig(mode="demo"))
        payload = json.loads(render_json(report))
        self.assertEqual([case["label"] for case in payload["demo"]["cases"]],
                         ["basis_0", "basis_1", "superposition"])
        self.assertEqual(len(render_csv(report).splitlines()), 4)


class TestMain(unittest.TestCase):
    """Exit codes of the launcher."""

    def test_pass(self):
        """Test a passing run exits with status 0."""
        code, out = run_quietly(["--mode", "single", "--c", COMPLEMENT])
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(out)["summary"]["pass"])

    def test_usage_error(self):
        """Test invalid flags exit with status 2."""
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as ctx:
                main(["--m", "2", "--n", "4"])
        self.assertEqual(ctx.exception.code, 2)

    def test_resource_error(self):
        """Test an unwritable report path exits with status 3."""
        with tempfile.TemporaryDirectory() as tmpdir:
            code, _ = run_quietly(["--out", str(Path(tmpdir) / "missing" / "r.json")])
        self.assertEqual(code, 3)

    def test_oversized_machine_exits_with_resource_status(self):
        """Test an over-cap m exits with status 3 and writes no report."""
        code, out = run_quietly(["--mode", "single", "--m", "12"])
        self.assertEqual(code, 3)
        self.assertEqual(out, "")

    def test_assertion_failure(self):
        """Test a failed assertion exits with status 1."""
        code, out = run_quietly(["--mode", "single", "--tol", "1e-300"])
        self.assertEqual(code, 1)
        self.assertFalse(json.loads(out)["summary"]["pass"])


@pytest.mark.slow
class TestDefaultGridAcceptance(unittest.TestCase):
    """Every no-go assertion over the default grid."""

    def test_default_grid(self):
        """Test every assertion over the default grid."""
        report = run_verification(RunConfig(mode="grid", grid="default"))
        summary = report.summary()
        self.assertEqual(summary["points"], 1575)
        self.assertEqual(summary["condition_counts"],
                         {"ORTHOGONAL_STATES": 200, "ORTHOGONAL_PROGRAMS": 150,
                          "DEGENERATE": 25, "VIOLATION": 1200})
        self.assertLessEqual(summary["max_residual"], 1e-10)
        self.assertTrue(summary["pass"], [p.values["failures"] for p in report.points if not p.passed])
        for point in report.points:
            values = point.values
            if values["condition_class"] == "VIOLATION":
                self.assertGreater(values["gap"], 0.0)
                self.assertGreater(values["trace_distance"], 0.0)
            else:
                self.assertLessEqual(values["trace_distance"], 1e-10)

    def test_other_machine_sizes(self):
        """Test the smoke grid with m=2."""
        config = replace(RunConfig(mode="grid", grid="smoke"), m=2, n=6)
        self.assertTrue(run_verification(config).passed)


def run_tests():
    """Run all unit tests."""
    print("🧪 Running Report and Launcher Tests")
    print("=" * 50)

    # Create test suite
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()

    # Add test classes
    suite.addTests(loader.loadTestsFromTestCase(TestRunVerification))
    suite.addTests(loader.loadTestsFromTestCase(TestEmitReport))
    suite.addTests(loader.loadTestsFromTestCase(TestMain))
    suite.addTests(loader.loadTestsFromTestCase(TestDefaultGridAcceptance))

    # Run tests
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == '__main__':
    run_tests()
