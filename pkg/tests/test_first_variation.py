import unittest

import numpy as np

from crareapy.errors import ChartDomainError
from crareapy.functionals import Functional
from crareapy.models import ModelLoader
from crareapy.surfaces import LevelSetSurface, SurfaceLoader
from crareapy.variational import Deformation, first_variation
from crareapy.surfaces.reference import rossi_sigma_energy
from crareapy.variational.first_variation import as_immersion, bump_grid, compact_bump, periodic_bump
from crareapy.verify.lemmas import family_derivative
from crareapy.verify.scans import CLIFFORD_ZERO

CLIFFORD_C = 1.0 / np.sqrt(2.0)
TORUS_BOX = ((0.0, 2.0 * np.pi), (0.0, 2.0 * np.pi))


class TestDeformation(unittest.TestCase):

    def test_invalid_width(self):
        with self.assertRaises(ValueError) as context:
            Deformation((0.0, 0.0), 0.0)
        self.assertIn("width must be positive", str(context.exception))

    def test_invalid_step(self):
        with self.assertRaises(ValueError):
            Deformation((0.0, 0.0), 0.5, step=-1e-3)

    def test_needs_a_component(self):
        with self.assertRaises(ValueError) as context:
            Deformation((0.0, 0.0), 0.5, f_weight=0.0, g_weight=0.0)
        self.assertIn("nonzero f or g", str(context.exception))

    def test_weights_are_normalized(self):
        # Arrange
        d = Deformation((0.0, 0.0), 0.5, f_weight=-0.4, g_weight=0.2)

        # Act
        f, g = d.weights

        # Assert
        self.assertEqual(f, -1.0)
        self.assertEqual(g, 0.5)

    def test_random_center_inside_the_box(self):
        # Act
        d = Deformation.random(3, TORUS_BOX, width=0.5)

        # Assert
        for axis in range(2):
            self.assertGreater(d.center[axis], 0.3 * 2.0 * np.pi)
            self.assertLess(d.center[axis], 0.7 * 2.0 * np.pi)
        self.assertEqual(d, Deformation.random(3, TORUS_BOX, width=0.5))


class TestBumps(unittest.TestCase):

    def test_compact_bump(self):
        # Act
        values = compact_bump(np.array([0.5, 0.9, 1.5, 0.3]), 0.5, 0.4)

        # Assert
        self.assertAlmostEqual(values[0], 1.0, delta=1e-15)
        self.assertEqual(values[1], 0.0)
        self.assertEqual(values[2], 0.0)
        self.assertGreater(values[3], 0.0)

    def test_sharpened_compact_bump(self):
        # Act
        values = compact_bump(np.array([0.5, 0.7, 0.9]), 0.5, 0.4, sharpness=8.0)

        # Assert
        self.assertAlmostEqual(values[0], 1.0, delta=1e-15)
        self.assertAlmostEqual(values[1], np.exp(-8.0 / 3.0), delta=1e-12)
        self.assertEqual(values[2], 0.0)

    def test_bump_grid_resolves_the_width(self):
        # Arrange
        model = ModelLoader.create("disk-bundle")
        flat = SurfaceLoader.create("plane:0,1,0", model)
        rossi = ModelLoader.create("rossi:0.3")
        torus = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C}", rossi)

        # Act
        flat_grid = bump_grid(flat, 0.25, (32, 32))
        torus_grid = bump_grid(torus, 0.5)

        # Assert
        self.assertEqual(flat_grid, (57, 32))
        self.assertEqual(torus_grid, (38, 38))

    def test_periodic_bump_wraps(self):
        # Arrange
        period = 2.0 * np.pi

        # Act
        values = periodic_bump(np.array([1.0, 1.0 + period, 0.5, 1.5]), 1.0, 0.5, period)

        # Assert
        self.assertAlmostEqual(values[0], 1.0, delta=1e-15)
        self.assertAlmostEqual(values[1], 1.0, delta=1e-12)
        self.assertAlmostEqual(values[2], values[3], delta=1e-12)

    def test_profile_peaks_at_the_center(self):
        # Arrange
        d = Deformation((np.pi, 0.5), 0.3)
        box = (TORUS_BOX[0], (0.0, 1.0))
        params = np.array([[np.pi, 0.5], [np.pi, 0.9], [0.0, 0.5]])

        # Act
        profile = d.profile(params, box, (True, False))

        # Assert
        self.assertAlmostEqual(profile[0], 1.0, delta=1e-15)
        self.assertEqual(profile[1], 0.0)
        self.assertLess(profile[2], 1e-6)


class TestFirstVariation(unittest.TestCase):

    def test_surface_without_parameterization(self):
        # Arrange
        model = ModelLoader.create("heisenberg")
        surface = LevelSetSurface(model, lambda p: p[:, 0], "x=0")

        # Act / Assert
        with self.assertRaises(ValueError) as context:
            as_immersion(surface)
        self.assertIn("graph_over", str(context.exception))

    def test_deformation_leaving_the_chart(self):
        # Arrange
        model = ModelLoader.create("disk-bundle")
        surface = SurfaceLoader.create("plane:0,1,0.9", model)
        d = Deformation((0.0, 0.5), 0.2, 1.0, 0.0, step=2.0)

        # Act / Assert
        with self.assertRaises(ChartDomainError) as context:
            first_variation(model, surface, Functional.E1, d, grid=(16, 16))
        self.assertIn("leaves the chart", str(context.exception))

    def test_clifford_torus_is_E1_stationary(self):
        # Arrange
        model = ModelLoader.create("rossi:0.3")
        surface = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C}", model)
        d = Deformation((2.0, 3.0), 0.5, 1.0, 0.4)

        # Act
        value = first_variation(model, surface, Functional.E1, d, grid=(24, 24))

        # Assert
        self.assertLess(abs(value), 1e-4)

    def test_plane_is_E1_stationary(self):
        # Arrange
        model = ModelLoader.create("disk-bundle")
        surface = SurfaceLoader.create("plane:0,1,0", model)
        d = Deformation.random(4, surface.box, width=0.2)

        # Act
        value = first_variation(model, surface, Functional.E1, d, grid=bump_grid(surface, d.width, (32, 32)))

        # Assert
        self.assertLess(abs(value), 1e-4)

    def test_root_torus_is_E2_stationary_under_reeb_bumps(self):
        # Arrange
        model = ModelLoader.create(f"rossi:{CLIFFORD_ZERO!r}")
        surface = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C!r}", model)
        d = Deformation((2.0, 3.0), 0.5, 0.0, 1.0)

        # Act
        value = first_variation(model, surface, Functional.E2, d, grid=(38, 38))

        # Assert
        self.assertLess(abs(value), 1e-4)

    def test_root_torus_is_E2_stationary_under_the_family_shift(self):
        # Act
        at_root = family_derivative(lambda c: rossi_sigma_energy(c, CLIFFORD_ZERO), CLIFFORD_C)
        at_zero = family_derivative(lambda c: rossi_sigma_energy(c, 0.0), CLIFFORD_C)

        # Assert
        self.assertLess(abs(at_root), 1e-6)
        self.assertGreater(abs(at_zero), 0.01)

    def test_root_torus_normal_bump_changes_E2(self):
        # Arrange
        model = ModelLoader.create(f"rossi:{CLIFFORD_ZERO!r}")
        surface = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C!r}", model)
        d = Deformation((np.pi, np.pi), 0.5, 1.0, 0.0)

        # Act
        value = first_variation(model, surface, Functional.E2, d, grid=(38, 38))

        # Assert
        self.assertGreater(abs(value), 0.1)

    def test_clifford_torus_is_not_E2_stationary_at_zero(self):
        # Arrange
        model = ModelLoader.create("rossi:0")
        surface = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C}", model)
        d = Deformation((np.pi, np.pi), 0.5)

        # Act
        value = first_variation(model, surface, Functional.E2, d, grid=(24, 24))

        # Assert
        self.assertGreater(abs(value), 0.01)


if __name__ == "__main__":
    unittest.main()
