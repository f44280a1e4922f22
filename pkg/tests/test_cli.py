import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest import mock

import numpy as np
import pandas as pd

from crareapy.cli.config import WORKERS_ENV, RunConfig, load_config_file, parse_grid
from crareapy.cli.main import EXIT_OK, EXIT_USAGE, main, parse_range

CLIFFORD = ["--model", "rossi:0", "--surface", f"rossi-sigma:{1 / np.sqrt(2)!r}"]


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestConfig(unittest.TestCase):

    def test_parse_grid(self):
        self.assertEqual(parse_grid("16x32"), (16, 32))
        self.assertEqual(parse_grid("24"), (24, 24))
        with self.assertRaises(ValueError) as context:
            parse_grid("16x")
        self.assertIn("must have the form NxM", str(context.exception))

    def test_validate(self):
        with self.assertRaises(ValueError) as context:
            RunConfig(tol_hcr=0.0).validate()
        self.assertIn("'tol_hcr' must be positive", str(context.exception))
        with self.assertRaises(ValueError):
            RunConfig(grid=(4, 64)).validate()
        with self.assertRaises(ValueError):
            RunConfig(workers=0).validate()

    def test_flags_override_the_file(self):
        # Act
        config = RunConfig.from_sources({"grid": "16x16", "seed": "3"}, {"grid": "8x8", "seed": None})

        # Assert
        self.assertEqual(config.grid, (8, 8))
        self.assertEqual(config.seed, 3)

    def test_workers_from_the_environment(self):
        with mock.patch.dict(os.environ, {WORKERS_ENV: "4"}):
            self.assertEqual(RunConfig.from_sources({}, {}).workers, 4)
            self.assertEqual(RunConfig.from_sources({"workers": "2"}, {}).workers, 2)

    def test_unknown_key(self):
        with self.assertRaises(ValueError) as context:
            RunConfig.from_sources({"colour": "red"}, {})
        self.assertIn("is not supported.", str(context.exception))

    def test_load_config_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            # Arrange
            path = Path(tmp) / "run.cfg"
            path.write_text("# settings\ngrid = 12x12\ntol-hcr = 1e-6  # looser\n\n")

            # Act
            values = load_config_file(path)

        # Assert
        self.assertEqual(values, {"grid": "12x12", "tol_hcr": "1e-6"})

    def test_parse_range(self):
        np.testing.assert_allclose(parse_range("0.1:0.5:5"), [0.1, 0.2, 0.3, 0.4, 0.5])
        np.testing.assert_allclose(parse_range("0.3,0.7"), [0.3, 0.7])


class TestCommands(unittest.TestCase):

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def path(self, name: str) -> str:
        return str(Path(self.tmp.name) / name)

    def test_models(self):
        # Act
        code, out, _ = run("models")

        # Assert
        self.assertEqual(code, EXIT_OK)
        self.assertIn("disk-bundle", out)
        self.assertIn("rossi-sigma:<c>", out)

    def test_unknown_model(self):
        # Act
        code, _, err = run("evaluate", "--model", "sphere", "--surface", "plane:0,1,0")

        # Assert
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("crareapy evaluate: error:", err)
        self.assertIn("is not supported.", err)

    def test_evaluate_clifford_E1(self):
        # Arrange
        out_path = self.path("e1.json")

        # Act
        code, _, _ = run("evaluate", *CLIFFORD, "--grid", "8x8", "--out", out_path)

        # Assert
        self.assertEqual(code, EXIT_OK)
        payload = json.loads(Path(out_path).read_text())
        self.assertAlmostEqual(payload["result"]["value"], 4.0 * np.pi ** 2 * 0.5 ** 2.5, delta=1e-6)

    def test_residual_table(self):
        # Arrange
        out_path = self.path("residual.csv")

        # Act
        code, _, _ = run("residual", "--model", "disk-bundle", "--surface", "plane:0,1,0",
                         "--grid", "8x8", "--out", out_path)

        # Assert
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(out_path)
        self.assertEqual(list(table.columns), ["u", "v", "H", "alpha", "H_cr", "residual"])
        self.assertEqual(len(table), 64)
        self.assertLess(table["residual"].abs().max(), 1e-6)

    def test_residual_cyz_form_on_a_torsion_model(self):
        # Act
        code, _, err = run("residual", "--model", "rossi:0.3", "--surface", "rossi-sigma:0.5",
                           "--form", "cyz", "--grid", "8x8")

        # Assert
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("CYZ form inapplicable", err)

    def test_scan_ellipse_root(self):
        # Arrange
        out_path = self.path("root.csv")

        # Act
        code, _, _ = run("scan", "--ellipse-root", "2,1", "--out", out_path)

        # Assert
        self.assertEqual(code, EXIT_OK)
        table = pd.read_csv(out_path)
        self.assertEqual(list(table.columns), ["a", "b", "t0", "s0"])
        self.assertTrue(0.0 < table["t0"].iloc[0] < 0.5 * np.pi)

    def test_scan_hypothesis_violated(self):
        # Act
        code, _, err = run("scan", "--ellipse-root", "1,1")

        # Assert
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("not below 3/8", err)

    def test_scan_rossi_closed_form(self):
        # Arrange
        out_path = self.path("rossi.csv")

        # Act
        code, _, _ = run("scan", "--rossi-e2", "--t", "0.1", "--c", "0.1:0.9:9", "--out", out_path)

        # Assert
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(pd.read_csv(out_path)), 9)

    def test_conformal_check(self):
        # Act
        code, _, _ = run("conformal-check", "--model", "disk-bundle", "--surface", "cylinder:0.5",
                         "--point", "0.3,0.4,0.2", "--factor", "linear:1,0.2,-0.1,0.05")

        # Assert
        self.assertEqual(code, EXIT_OK)

    def test_verify_single_lemma(self):
        # Arrange
        out_path = self.path("verify.json")

        # Act
        code, out, _ = run("verify", "--lemma", "5.4", "--out", out_path)

        # Assert
        self.assertEqual(code, EXIT_OK)
        self.assertIn("5.4", out)
        report = json.loads(Path(out_path).read_text())["reports"][0]
        self.assertEqual(report["status"], "pass")

    def test_verify_needs_ids(self):
        # Act
        code, _, err = run("verify")

        # Assert
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("--all or --lemma", err)

    def test_config_file(self):
        # Arrange
        config_path = self.path("run.cfg")
        Path(config_path).write_text("model = disk-bundle\nsurface = plane:0,1,0\ngrid = 8x8\n")

        # Act
        code, out, _ = run("evaluate", "--config", config_path)

        # Assert
        self.assertEqual(code, EXIT_OK)
        self.assertIn("value", out)

    def test_report_rebuilds_its_run(self):
        # Arrange
        first_path, second_path, third_path = self.path("first.json"), self.path("second.json"), self.path("third.json")
        run("evaluate", *CLIFFORD, "--functional", "E2", "--grid", "8x12", "--singular-eps", "1e-7",
            "--out", first_path)
        first = json.loads(Path(first_path).read_text())
        config_path = self.path("rebuilt.cfg")
        lines = [f"{key} = {value}" for key, value in first["config"].items() if value is not None]
        Path(config_path).write_text("\n".join(lines) + "\n")

        # Act
        from_lines, _, _ = run("evaluate", "--functional", "E2", "--config", config_path, "--out", second_path)
        from_report, _, _ = run("evaluate", "--functional", "E2", "--config", first_path, "--out", third_path)

        # Assert
        self.assertEqual((from_lines, from_report), (EXIT_OK, EXIT_OK))
        for path in (second_path, third_path):
            rerun = json.loads(Path(path).read_text())
            self.assertEqual(rerun["result"], first["result"])
            self.assertEqual({k: v for k, v in rerun["config"].items() if k != "out"},
                             {k: v for k, v in first["config"].items() if k != "out"})

    def test_report_without_config_block(self):
        # Arrange
        config_path = self.path("list.json")
        Path(config_path).write_text(json.dumps({"config": [1, 2]}))

        # Act
        code, _, err = run("models", "--config", config_path)

        # Assert
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("must be an object or a report", err)

    def test_bad_config_key(self):
        # Arrange
        config_path = self.path("bad.cfg")
        Path(config_path).write_text("colour = red\n")

        # Act
        code, _, err = run("models", "--config", config_path)

        # Assert
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("Config key 'colour' is not supported.", err)


if __name__ == "__main__":
    unittest.main()
