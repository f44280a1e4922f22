import unittest

import numpy as np

from crareapy.errors import HypothesisViolatedError
from crareapy.surfaces.reference import ellipse_hcr_endpoints
from crareapy.verify import ellipse_hcr_root, scan_rossi_E2, spot_check_no_zero_E1
from crareapy.verify.scans import NON_PROOF_LABEL, divergent_tails, ellipse_slice_hcr


class TestRossiScan(unittest.TestCase):

    def test_closed_form_tails_diverge(self):
        # Arrange
        c_values = np.linspace(0.02, 0.98, 40)

        # Act
        scan = scan_rossi_E2(c_values, 0.1, numeric=False)
        tails = divergent_tails(scan)

        # Assert
        self.assertEqual(list(scan.columns), ["c", "E2_closed_form"])
        self.assertTrue(tails["upper"])
        self.assertTrue(tails["lower"])

    def test_numeric_column_agrees(self):
        # Act
        scan = scan_rossi_E2([0.6, 0.4], -0.2, grid=(16, 16))

        # Assert
        self.assertEqual(list(scan["c"]), [0.4, 0.6])
        for closed, numeric in zip(scan["E2_closed_form"], scan["E2"]):
            self.assertAlmostEqual(numeric, closed, delta=1e-4 * max(1.0, abs(closed)))

    def test_numeric_tails_diverge(self):
        # Arrange
        c_values = np.linspace(0.02, 0.98, 64)
        outer = np.concatenate([c_values[:5], c_values[-5:]])

        # Act
        scan = scan_rossi_E2(outer, 0.2, grid=(24, 24))
        tails = divergent_tails(scan, column="E2")

        # Assert
        self.assertTrue(tails["upper"])
        self.assertTrue(tails["lower"])
        for closed, numeric in zip(scan["E2_closed_form"], scan["E2"]):
            self.assertAlmostEqual(numeric, closed, delta=1e-3 * max(1.0, abs(closed)))

    def test_short_scan(self):
        # Arrange
        scan = scan_rossi_E2([0.3, 0.5], 0.1, numeric=False)

        # Act / Assert
        with self.assertRaises(ValueError) as context:
            divergent_tails(scan)
        self.assertIn("at least 10 samples", str(context.exception))


class TestEllipseRoot(unittest.TestCase):

    def test_endpoints(self):
        # Act
        values = ellipse_slice_hcr(2.0, 1.0, np.array([0.0, 0.5 * np.pi]))

        # Assert
        np.testing.assert_allclose(values, ellipse_hcr_endpoints(2.0, 1.0), atol=1e-12)
        np.testing.assert_allclose(values, [29.0 / 16.0, -1.0 / 8.0], atol=1e-12)

    def test_root(self):
        # Act
        t0, s0 = ellipse_hcr_root(2.0, 1.0)

        # Assert
        self.assertGreater(t0, 0.0)
        self.assertLess(t0, 0.5 * np.pi)
        self.assertAlmostEqual(float(ellipse_slice_hcr(2.0, 1.0, t0)[0]), 0.0, delta=1e-9)
        self.assertGreater(s0, 0.0)

    def test_hypothesis_violated(self):
        with self.assertRaises(HypothesisViolatedError) as context:
            ellipse_hcr_root(1.0, 1.0)
        self.assertIn("not below 3/8", str(context.exception))


class TestSpotCheck(unittest.TestCase):

    def test_rossi_tori(self):
        # Act
        check = spot_check_no_zero_E1("rossi:-0.2", "rossi-sigma", n_samples=3, grid=(8, 8))

        # Assert
        self.assertFalse(check.skipped)
        self.assertEqual(len(check.table), 3)
        self.assertGreater(check.minimum, 0.0)
        self.assertEqual(check.label, NON_PROOF_LABEL)

    def test_circle_torus_slices(self):
        # Act
        check = spot_check_no_zero_E1("torus-circle:1", "torus-slice", n_samples=2, grid=(8, 8))

        # Assert
        self.assertAlmostEqual(check.table["E1"].iloc[0], check.table["E1"].iloc[1], delta=1e-8)

    def test_unsupported_pair_is_skipped(self):
        # Act
        with self.assertLogs("crareapy.verify.scans", level="WARNING"):
            check = spot_check_no_zero_E1("heisenberg", "plane")

        # Assert
        self.assertTrue(check.skipped)
        self.assertTrue(np.isnan(check.minimum))

    def test_rossi_parameter_above_the_zero(self):
        # Act
        check = spot_check_no_zero_E1("rossi:0.5", "rossi-sigma")

        # Assert
        self.assertTrue(check.skipped)


if __name__ == "__main__":
    unittest.main()
