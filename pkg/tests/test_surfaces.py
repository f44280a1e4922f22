import unittest

import numpy as np

from crareapy.errors import ChartDomainError, NotOnSurfaceError, SingularPointError
from crareapy.models import ModelLoader
from crareapy.models.base import ChartPoint, dot
from crareapy.surfaces import (
    Direction,
    SurfaceLoader,
    derivation_alpha,
    frame_point_data,
    h_cr,
    legendrian_frame,
    p_mean_curvature,
    tangential_derivative,
)
from crareapy.surfaces.frame import mean_curvature_values
from crareapy.surfaces.reference import (
    clifford_hcr,
    cylinder_H,
    disk_hcr_vertical,
    log_graph_alpha,
    plane_H,
    rossi_sigma_H,
    torus_slice_H,
    torus_slice_hcr,
    vertical_surface_H,
)


class TestVerticalSurfaces(unittest.TestCase):

    def setUp(self):
        # Arrange (global)
        self.model = ModelLoader.create("disk-bundle")
        self.plane = SurfaceLoader.create("plane:0,1,0.5", self.model)
        self.p = self.model.point(0.2, 0.5, 0.3)

    def test_plane_mean_curvature(self):
        # Act
        H = p_mean_curvature(self.model, self.plane, self.p)

        # Assert
        self.assertAlmostEqual(H, plane_H(0.0, 1.0, 0.5), delta=1e-6)

    def test_plane_hcr_and_alpha(self):
        # Act
        alpha = derivation_alpha(self.model, self.plane, self.p)
        hcr = h_cr(self.model, self.plane, self.p)

        # Assert
        self.assertAlmostEqual(alpha, 0.0, delta=1e-10)
        self.assertAlmostEqual(hcr, disk_hcr_vertical(-0.5), delta=1e-6)

    def test_legendrian_frame_is_contact_and_tangent(self):
        # Act
        e1, e2, singular = legendrian_frame(self.model, self.plane, self.p)
        theta = self.model.theta(self.p.as_array()[None, :])[0]

        # Assert
        self.assertFalse(singular)
        self.assertAlmostEqual(float(theta @ e1.as_array()), 0.0, delta=1e-12)
        self.assertAlmostEqual(float(theta @ e2.as_array()), 0.0, delta=1e-12)
        self.assertAlmostEqual(e1.components[1], 0.0, delta=1e-12)

    def test_tangential_derivatives_of_coordinates(self):
        # Arrange
        e1, _, _ = legendrian_frame(self.model, self.plane, self.p)

        def t_coordinate(loc):
            return loc[:, 2]

        # Act
        v_of_t = tangential_derivative(self.model, self.plane, self.p, Direction.V, t_coordinate)
        e1_of_t = tangential_derivative(self.model, self.plane, self.p, Direction.E1, t_coordinate)

        # Assert
        self.assertAlmostEqual(v_of_t, 1.0, delta=1e-8)
        self.assertAlmostEqual(e1_of_t, e1.components[2], delta=1e-8)

    def test_cylinder_mean_curvature_both_methods(self):
        # Arrange
        rho = 0.5
        cylinder = SurfaceLoader.create(f"cylinder:{rho}", self.model)
        p = self.model.point(0.0, rho, 0.4)

        # Act
        rotation = p_mean_curvature(self.model, cylinder, p, method="rotation")
        covariant = p_mean_curvature(self.model, cylinder, p, method="covariant")

        # Assert
        self.assertAlmostEqual(rotation, float(cylinder_H(rho)), delta=1e-6)
        self.assertAlmostEqual(covariant, rotation, delta=1e-5)

    def test_cylinder_matches_the_vertical_surface_formula(self):
        # Arrange
        rho = 0.5
        cylinder = SurfaceLoader.create(f"cylinder:{rho}", self.model)
        p = self.model.point(0.0, rho, 0.4)

        # Act
        H = p_mean_curvature(self.model, cylinder, p)
        expected = vertical_surface_H(0.0, rho, 0.0, 2.0 * rho, 2.0, 0.0, 2.0)

        # Assert
        self.assertAlmostEqual(float(expected), float(cylinder_H(rho)), delta=1e-12)
        self.assertAlmostEqual(H, float(expected), delta=1e-6)

    def test_unknown_method(self):
        with self.assertRaises(ValueError) as context:
            p_mean_curvature(self.model, self.plane, self.p, method="spectral")
        self.assertIn("is not supported.", str(context.exception))

    def test_point_off_the_plane(self):
        with self.assertRaises(NotOnSurfaceError):
            h_cr(self.model, self.plane, self.model.point(0.2, 0.1, 0.3))

    def test_surface_of_another_model(self):
        # Arrange
        other = ModelLoader.create("disk-bundle")

        # Act / Assert
        with self.assertRaises(ValueError) as context:
            h_cr(other, self.plane, self.p)
        self.assertIn("was not built on model", str(context.exception))

    def test_frame_point_data(self):
        # Act
        data = frame_point_data(self.model, self.plane, self.p)

        # Assert
        self.assertAlmostEqual(data.H, -0.5, delta=1e-6)
        self.assertAlmostEqual(data.H_cr, disk_hcr_vertical(-0.5), delta=1e-6)
        self.assertNotEqual(data.area2form, 0.0)

    def test_graph_over_reproduces_the_plane(self):
        # Arrange
        graph = self.plane.graph_over((0.2, 0.5, 0.3), box=((-0.3, 0.3), (0.1, 0.5)))

        # Act
        H = mean_curvature_values(graph, np.array([[0.2, 0.3]]))

        # Assert
        self.assertAlmostEqual(abs(float(H[0])), 0.5, delta=1e-5)


class TestGraphs(unittest.TestCase):

    def setUp(self):
        self.model = ModelLoader.create("disk-bundle")

    def test_graph_t2_alpha(self):
        # Arrange
        surface = SurfaceLoader.create("graph-t2:1", self.model)
        r = 0.4
        p = self.model.point(r, 0.0, 1.0)

        # Act
        alpha = derivation_alpha(self.model, surface, p)

        # Assert
        self.assertAlmostEqual(alpha, 1.0 / (2.0 * r), delta=1e-8)

    def test_graph_t2_singular_on_the_axis(self):
        # Arrange
        surface = SurfaceLoader.create("graph-t2:1", self.model)

        # Act / Assert
        with self.assertRaises(SingularPointError) as context:
            h_cr(self.model, surface, ChartPoint((0.0, 0.0, 1.0)))
        self.assertIn("is singular", str(context.exception))

    def test_log_graph_alpha(self):
        # Arrange
        k, c, r = 0.5, 1.0, 0.6
        surface = SurfaceLoader.create(f"log-graph:{k},{c}", self.model)
        t = float(np.sqrt(c + k * np.log1p(-r ** 2)))
        p = self.model.point(0.0, r, t)

        # Act
        alpha = derivation_alpha(self.model, surface, p)

        # Assert
        self.assertAlmostEqual(alpha, float(log_graph_alpha(k, t, r)), delta=1e-8)


class TestTori(unittest.TestCase):

    def test_rossi_sigma_invariants(self):
        # Arrange
        t, c = 0.3, 0.6
        model = ModelLoader.create(f"rossi:{t}")
        surface = SurfaceLoader.create(f"rossi-sigma:{c}", model)
        phi1, phi2 = 0.4, 1.1
        p = model.point(c, phi1, phi2)

        # Act
        H = p_mean_curvature(model, surface, p)
        alpha = derivation_alpha(model, surface, p)

        # Assert
        self.assertAlmostEqual(H, float(rossi_sigma_H(c, t, phi1 + phi2)), delta=1e-6)
        self.assertAlmostEqual(alpha, 0.0, delta=1e-8)

    def test_clifford_hcr(self):
        # Arrange
        t = -0.4
        model = ModelLoader.create(f"rossi:{t}")
        surface = SurfaceLoader.create(f"rossi-sigma:{1 / np.sqrt(2)}", model)
        p = model.point(1 / np.sqrt(2), 2.0, 0.5)

        # Act
        hcr = h_cr(model, surface, p)

        # Assert
        self.assertAlmostEqual(hcr, clifford_hcr(t), delta=1e-6)

    def test_circle_torus_slice_hcr(self):
        # Arrange
        model = ModelLoader.create("torus-circle:2")
        surface = SurfaceLoader.create("torus-slice:1", model)
        p = model.point(1.0, 0.3, 2.0)

        # Act
        hcr = h_cr(model, surface, p)

        # Assert
        self.assertAlmostEqual(hcr, float(torus_slice_hcr(0.5, 0.0, 0.0)), delta=1e-6)

    def test_ellipse_torus_slice_invariants(self):
        # Arrange
        model = ModelLoader.create("torus-ellipse:2,1")
        surface = SurfaceLoader.create("torus-slice:1", model)
        p = model.point(1.0, 0.5, 0.5)
        k0, k1, k2, _ = model.curve.curvature_derivatives(1.0)

        # Act
        H = p_mean_curvature(model, surface, p)
        hcr = h_cr(model, surface, p)

        # Assert
        self.assertAlmostEqual(abs(H), abs(float(torus_slice_H(k0, k1)[0])), delta=1e-5)
        self.assertAlmostEqual(hcr, float(torus_slice_hcr(k0, k1, k2)[0]), delta=1e-5)


class TestFrameOnFamilies(unittest.TestCase):

    def setUp(self):
        # Arrange (global)
        self.families = [
            ("disk-bundle", "plane:0,1,0.3"),
            ("disk-bundle", "cylinder:0.5"),
            ("disk-bundle", "graph-t2:1"),
            ("disk-bundle", "log-graph:-1,1"),
            ("heisenberg", "plane:1,2,0.5"),
            ("rossi:0.3", "rossi-sigma:0.6"),
            ("torus-circle:2", "torus-slice:1"),
        ]
        self.shape = (100, 100)

    def test_frame_is_levi_orthonormal_and_tangent(self):
        for model_spec, surface_spec in self.families:
            with self.subTest(surface=surface_spec):
                # Arrange
                model = ModelLoader.create(model_spec)
                surface = SurfaceLoader.create(surface_spec, model)
                loc = surface.grid_locations(surface.sample_parameters(self.shape))
                points = surface.chart_points(loc)

                # Act
                frame = surface.frame(loc)
                e1, e2, V = surface.frame_vectors(loc, frame)
                h1 = model.frame_coefficients(points, e1)
                h2 = model.frame_coefficients(points, e2)
                theta = model.theta(points)

                # Assert
                self.assertEqual(len(loc), 10 ** 4)
                self.assertFalse(np.any(frame.singular))
                self.assertAlmostEqual(np.max(np.abs(np.sum(h1 * h1, axis=1) - 1.0)), 0.0, delta=1e-9)
                self.assertAlmostEqual(np.max(np.abs(np.sum(h2 * h2, axis=1) - 1.0)), 0.0, delta=1e-9)
                self.assertAlmostEqual(np.max(np.abs(np.sum(h1 * h2, axis=1))), 0.0, delta=1e-9)
                self.assertAlmostEqual(np.max(np.abs(dot(theta, e1))), 0.0, delta=1e-9)
                self.assertAlmostEqual(np.max(np.abs(dot(theta, e2))), 0.0, delta=1e-9)
                self.assertLess(np.max(surface.tangency_defect(loc, e1)), 1e-9)
                self.assertLess(np.max(surface.tangency_defect(loc, V)), 1e-9)

    def test_singular_fraction_shrinks_with_the_threshold(self):
        # Arrange
        model = ModelLoader.create("rossi:0.5")
        thresholds = [2.0, 1.5, 1.0, 0.8, 0.6, 0.4, 0.2, 1e-3, 1e-6]
        radii = [0.5, 0.3, 0.1, 0.01]

        def flagged(c, eps):
            surface = SurfaceLoader.create(f"rossi-sigma:{c}", model, eps)
            loc = surface.grid_locations(surface.sample_parameters(self.shape))
            return float(np.mean(surface.frame(loc).singular))

        # Act
        table = np.array([[flagged(c, eps) for eps in thresholds] for c in radii])

        # Assert
        self.assertTrue(np.all(np.diff(table, axis=1) <= 0.0))
        self.assertTrue(np.all(np.diff(table, axis=0) <= 0.0))
        self.assertTrue(np.all(table[:, -3:] == 0.0))
        self.assertEqual(table[0, 0], 1.0)

    def test_singular_fraction_at_the_contact_scale(self):
        # Arrange
        model = ModelLoader.create("rossi:0.5")
        surface = SurfaceLoader.create("rossi-sigma:0.6", model, 0.8)
        loc = surface.grid_locations(surface.sample_parameters(self.shape))

        # Act
        fraction = float(np.mean(surface.frame(loc).singular))

        # Assert
        self.assertAlmostEqual(fraction, 1.0 / 3.0, delta=0.02)


class TestSurfaceLoader(unittest.TestCase):

    def setUp(self):
        self.disk = ModelLoader.create("disk-bundle")

    def test_unknown_family(self):
        with self.assertRaises(ValueError) as context:
            SurfaceLoader.create("sphere:1", self.disk)
        self.assertIn("is not supported.", str(context.exception))

    def test_wrong_arity(self):
        with self.assertRaises(ValueError) as context:
            SurfaceLoader.create("plane:0,1", self.disk)
        self.assertIn("expects the form", str(context.exception))

    def test_family_needs_its_model(self):
        with self.assertRaises(ValueError) as context:
            SurfaceLoader.create("cylinder:0.5", ModelLoader.create("heisenberg"))
        self.assertIn("needs a DiskBundle model", str(context.exception))

    def test_plane_missing_the_disk(self):
        with self.assertRaises(ChartDomainError):
            SurfaceLoader.create("plane:1,0,1.5", self.disk)

    def test_catalog(self):
        self.assertEqual(len(SurfaceLoader.catalog()), 6)


if __name__ == "__main__":
    unittest.main()
