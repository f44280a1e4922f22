import unittest

import numpy as np

from crareapy.errors import SingularPointError
from crareapy.functionals import (
    Functional,
    QuadratureResult,
    dA2_decomposition,
    density_dA1,
    density_dA2,
    integrate,
    quadrature_order,
)
from crareapy.models import ModelLoader
from crareapy.models.base import ChartPoint
from crareapy.surfaces import SurfaceLoader
from crareapy.surfaces.reference import (
    clifford_hcr,
    disk_hcr_vertical,
    rossi_sigma_energy,
)

CLIFFORD_C = 1.0 / np.sqrt(2.0)


class TestDensities(unittest.TestCase):

    def setUp(self):
        # Arrange (global)
        self.disk = ModelLoader.create("disk-bundle")
        self.plane = SurfaceLoader.create("plane:0,1,0", self.disk)
        self.p = self.disk.point(0.1, 0.0, 0.5)

    def test_dA1_on_the_central_plane(self):
        # Act
        density = density_dA1(self.disk, self.plane, self.p)

        # Assert
        self.assertAlmostEqual(density.dA1_scalar, abs(disk_hcr_vertical(0.0)) ** 1.5, delta=1e-8)
        self.assertIsNone(density.dA2_scalar)

    def test_dA2_on_the_central_plane(self):
        # Act
        density = density_dA2(self.disk, self.plane, self.p)

        # Assert
        self.assertAlmostEqual(density.dA2_scalar, 0.0, delta=1e-8)
        self.assertIsNone(density.dA1_scalar)

    def test_dA1_on_the_clifford_torus(self):
        # Arrange
        t = 0.3
        model = ModelLoader.create(f"rossi:{t}")
        surface = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C}", model)
        p = model.point(CLIFFORD_C, 0.7, 2.2)

        # Act
        density = density_dA1(model, surface, p)

        # Assert
        self.assertAlmostEqual(density.dA1_scalar, abs(clifford_hcr(t)) ** 1.5, delta=1e-7)

    def test_decomposition_adds_up(self):
        # Arrange
        k, c, r = 0.5, 1.0, 0.6
        surface = SurfaceLoader.create(f"log-graph:{k},{c}", self.disk)
        t = float(np.sqrt(c + k * np.log1p(-r ** 2)))
        p = self.disk.point(r, 0.0, t)

        # Act
        parts = dA2_decomposition(self.disk, surface, p)

        # Assert
        self.assertAlmostEqual(parts["full"], parts["reduced"] + parts["exact"], delta=1e-10)
        self.assertAlmostEqual(parts["full"], density_dA2(self.disk, surface, p).dA2_scalar, delta=1e-10)

    def test_singular_point(self):
        # Arrange
        surface = SurfaceLoader.create("graph-t2:1", self.disk)

        # Act / Assert
        with self.assertRaises(SingularPointError):
            density_dA1(self.disk, surface, ChartPoint((0.0, 0.0, 1.0)))


class TestQuadrature(unittest.TestCase):

    def setUp(self):
        # Arrange (global)
        self.model = ModelLoader.create("rossi:0")
        self.clifford = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C}", self.model)

    def test_clifford_E1(self):
        # Act
        result = integrate(self.model, self.clifford, Functional.E1, grid=(16, 16))

        # Assert
        self.assertIsInstance(result, QuadratureResult)
        self.assertAlmostEqual(result.value, 4.0 * np.pi ** 2 * 0.5 * 0.5 ** 1.5, delta=1e-6)
        self.assertEqual(result.excluded_fraction, 0.0)
        self.assertEqual(result.nodes, 32 * 32)

    def test_rossi_sigma_E2_against_closed_form(self):
        # Arrange
        t, c = 0.2, 0.5
        model = ModelLoader.create(f"rossi:{t}")
        surface = SurfaceLoader.create(f"rossi-sigma:{c}", model)
        expected = rossi_sigma_energy(c, t, "E2")

        # Act
        result = integrate(model, surface, "E2", grid=(32, 32))

        # Assert
        self.assertAlmostEqual(result.value, expected, delta=1e-4 * max(1.0, abs(expected)))

    def test_without_refinement(self):
        # Act
        result = integrate(self.model, self.clifford, Functional.E1, grid=(16, 16), refine=False)

        # Assert
        self.assertTrue(np.isnan(result.error_estimate))
        self.assertEqual(result.nodes, 16 * 16)

    def test_grid_too_coarse(self):
        with self.assertRaises(ValueError) as context:
            integrate(self.model, self.clifford, Functional.E1, grid=(4, 16))
        self.assertIn("at least 8 nodes", str(context.exception))

    def test_unknown_functional(self):
        with self.assertRaises(ValueError):
            integrate(self.model, self.clifford, "E3", grid=(16, 16))

    def test_surface_of_another_model(self):
        with self.assertRaises(ValueError) as context:
            integrate(ModelLoader.create("rossi:0"), self.clifford, Functional.E1)
        self.assertIn("was not built on model", str(context.exception))

    def test_simpson_order_on_a_plane(self):
        # Arrange
        disk = ModelLoader.create("disk-bundle")
        surface = SurfaceLoader.create("plane:0,1,0.3", disk)

        # Act
        study = quadrature_order(disk, surface, Functional.E1)

        # Assert
        self.assertGreater(study["order"], 2.0)
        self.assertEqual(len(study["values"]), 3)

    def test_error_estimate_is_the_unscaled_refinement_difference(self):
        # Arrange
        disk = ModelLoader.create("disk-bundle")
        surface = SurfaceLoader.create("plane:0,1,0.3", disk)
        coarse = integrate(disk, surface, Functional.E1, grid=(16, 16), refine=False).value
        fine = integrate(disk, surface, Functional.E1, grid=(32, 32), refine=False).value
        finest = integrate(disk, surface, Functional.E1, grid=(128, 128), refine=False).value

        # Act
        result = integrate(disk, surface, Functional.E1, grid=(16, 16))

        # Assert
        self.assertAlmostEqual(result.value, fine, delta=1e-14 * max(1.0, abs(fine)))
        self.assertAlmostEqual(result.error_estimate, abs(fine - coarse), delta=1e-14 * max(1.0, abs(fine)))
        self.assertLessEqual(abs(result.value - finest), result.error_estimate)

    def test_custom_density(self):
        # Arrange
        def unit(surface, loc):
            return np.ones(len(loc))

        # Act
        result = integrate(self.model, self.clifford, Functional.E1, grid=(16, 16), density=unit)

        # Assert
        self.assertAlmostEqual(result.value, 4.0 * np.pi ** 2 * 0.5, delta=1e-8)


if __name__ == "__main__":
    unittest.main()
