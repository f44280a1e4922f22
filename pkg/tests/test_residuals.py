import unittest

import numpy as np

from crareapy.errors import InapplicableFormulaError, UndefinedResidualError
from crareapy.models import ModelLoader
from crareapy.surfaces import SurfaceLoader
from crareapy.surfaces.reference import (
    circle_torus_el2_scaled,
    clifford_el2_scaled,
    disk_hcr_vertical,
    plane_el2,
    plane_H,
    vertical_el1_factor,
)
from crareapy.variational import el1_cyz, el1_general, el2_constant, el2_cyz, el_intermediates
from crareapy.variational.residuals import (
    el1_cyz_values,
    el1_general_values,
    el2_constant_values,
    el2_cyz_values,
    h_symbols,
    scaled_f_cyz,
    scaled_f_expanded,
    scaled_f_from_symbols,
    second_order_fields,
)

CLIFFORD_C = 1.0 / np.sqrt(2.0)


class TestVerticalPlanes(unittest.TestCase):

    def setUp(self):
        # Arrange (global)
        self.model = ModelLoader.create("disk-bundle")

    def test_central_plane_is_E1_critical(self):
        # Arrange
        surface = SurfaceLoader.create("plane:0,1,0", self.model)
        p = self.model.point(0.2, 0.0, 0.5)

        # Act
        general = el1_general(self.model, surface, p)
        cyz = el1_cyz(self.model, surface, p)

        # Assert
        self.assertAlmostEqual(general, 0.0, delta=1e-6)
        self.assertAlmostEqual(cyz, 0.0, delta=1e-6)

    def test_off_center_plane_E1(self):
        # Arrange
        c = 0.3
        surface = SurfaceLoader.create(f"plane:0,1,{c}", self.model)
        p = self.model.point(-0.1, c, 0.4)
        H = plane_H(0.0, 1.0, c)
        hcr = disk_hcr_vertical(H)
        expected = 0.5 * np.sign(hcr) * np.sqrt(abs(hcr)) * vertical_el1_factor(H)

        # Act
        residual = el1_general(self.model, surface, p)

        # Assert
        self.assertAlmostEqual(residual, float(expected), delta=1e-6)

    def test_residual_undefined_where_hcr_vanishes(self):
        # Arrange
        surface = SurfaceLoader.create(f"plane:0,1,{np.sqrt(3) / 2}", self.model)
        p = self.model.point(0.1, np.sqrt(3) / 2, 0.5)

        # Act / Assert
        with self.assertRaises(UndefinedResidualError) as context:
            el1_general(self.model, surface, p)
        self.assertIn("H_cr vanishes", str(context.exception))

    def test_central_plane_E2(self):
        # Arrange
        surface = SurfaceLoader.create("plane:0,1,0", self.model)
        p = self.model.point(0.2, 0.0, 0.5)

        # Act
        cyz = el2_cyz(self.model, surface, p)
        constant = el2_constant(self.model, surface, p)

        # Assert
        self.assertAlmostEqual(cyz, 1.0 / 12.0, delta=1e-6)
        self.assertAlmostEqual(cyz, float(plane_el2(0.0)), delta=1e-12)
        self.assertAlmostEqual(constant, cyz, delta=1e-10)


class TestGeneralAgainstCYZ(unittest.TestCase):

    def setUp(self):
        # Arrange (global)
        self.model = ModelLoader.create("disk-bundle")
        k, c, r = 0.5, 1.0, 0.6
        self.surface = SurfaceLoader.create(f"log-graph:{k},{c}", self.model)
        t = float(np.sqrt(c + k * np.log1p(-r ** 2)))
        self.p = self.model.point(0.0, r, t)
        self.loc = self.p.as_array()[None, :]

    def test_three_forms_of_frak_f_agree(self):
        # Act
        fields = second_order_fields(self.surface, self.loc)
        from_symbols = float(scaled_f_from_symbols(fields, h_symbols(fields))[0])
        expanded = float(scaled_f_expanded(fields)[0])
        cyz = float(scaled_f_cyz(fields)[0])

        # Assert
        scale = max(1.0, abs(from_symbols))
        self.assertAlmostEqual(expanded, from_symbols, delta=1e-9 * scale)
        self.assertAlmostEqual(cyz, from_symbols, delta=1e-9 * scale)

    def test_E1_forms_agree(self):
        # Act
        general = el1_general(self.model, self.surface, self.p)
        cyz = el1_cyz(self.model, self.surface, self.p)

        # Assert
        self.assertAlmostEqual(general, cyz, delta=1e-6 * max(1.0, abs(general)))

    def test_intermediates(self):
        # Act
        data = el_intermediates(self.model, self.surface, self.p)

        # Assert
        self.assertAlmostEqual(data.h10, data.hcr - data.h11 ** 2 / 6.0, delta=1e-10)
        self.assertIn("V_alpha", data.V_ops)
        self.assertAlmostEqual(data.h00, data.V_ops["V_alpha"], delta=1e-12)


class TestFormsAgreeOnFamilies(unittest.TestCase):

    def setUp(self):
        # Arrange (global)
        self.model = ModelLoader.create("disk-bundle")
        specs = ["plane:0,1,0.3", "cylinder:0.5", "graph-t2:1", "log-graph:-1,1", "log-graph:0.5,1"]
        self.samples = []
        for spec in specs:
            surface = SurfaceLoader.create(spec, self.model)
            self.samples.append((surface, surface.grid_locations(surface.sample_parameters((10, 20)))))

    def assertFormsAgree(self, first, second):
        self.assertTrue(np.array_equal(np.isnan(first), np.isnan(second)))
        finite = ~np.isnan(first)
        self.assertGreater(np.count_nonzero(finite), 0)
        ratio = np.abs(first[finite] - second[finite]) / (1.0 + np.abs(first[finite]))
        self.assertLess(float(np.max(ratio)), 1e-6)

    def test_E1_general_matches_the_vanishing_torsion_form(self):
        total = 0
        for surface, loc in self.samples:
            with self.subTest(surface=surface.name):
                # Act
                general = el1_general_values(surface, loc)
                cyz = el1_cyz_values(surface, loc)

                # Assert
                self.assertFormsAgree(general, cyz)
                total += len(loc)
        self.assertEqual(total, 1000)

    def test_E2_constant_torsion_matches_the_vanishing_torsion_form(self):
        total = 0
        for surface, loc in self.samples:
            with self.subTest(surface=surface.name):
                # Act
                constant = el2_constant_values(surface, loc)
                cyz = el2_cyz_values(surface, loc)

                # Assert
                self.assertFormsAgree(constant, cyz)
                total += len(loc)
        self.assertEqual(total, 1000)


class TestTorsionModels(unittest.TestCase):

    def test_cyz_form_inapplicable_with_torsion(self):
        # Arrange
        model = ModelLoader.create("rossi:0.3")
        surface = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C}", model)
        p = model.point(CLIFFORD_C, 1.0, 1.0)

        # Act / Assert
        with self.assertRaises(InapplicableFormulaError) as context:
            el1_cyz(model, surface, p)
        self.assertIn("CYZ form inapplicable", str(context.exception))
        with self.assertRaises(InapplicableFormulaError):
            el2_cyz(model, surface, p)

    def test_constant_torsion_form_needs_constant_webster(self):
        # Arrange
        model = ModelLoader.create("torus-ellipse:2,1")
        surface = SurfaceLoader.create("torus-slice:1", model)
        p = model.point(1.0, 0.5, 0.5)

        # Act / Assert
        with self.assertRaises(InapplicableFormulaError):
            el2_constant(model, surface, p)

    def test_clifford_torus(self):
        for t in (0.0, 0.3, -0.4):
            # Arrange
            model = ModelLoader.create(f"rossi:{t}")
            surface = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C}", model)
            p = model.point(CLIFFORD_C, 0.8, 2.5)

            # Act
            e1 = el1_general(model, surface, p)
            e2 = el2_constant(model, surface, p)

            # Assert
            self.assertAlmostEqual(e1, 0.0, delta=1e-6)
            self.assertAlmostEqual(e2, 4.0 / 9.0 * clifford_el2_scaled(t), delta=1e-6)

    def test_clifford_E2_at_zero(self):
        # Arrange
        model = ModelLoader.create("rossi:0")
        surface = SurfaceLoader.create(f"rossi-sigma:{CLIFFORD_C}", model)

        # Act
        e2 = el2_constant(model, surface, model.point(CLIFFORD_C, 0.0, 0.0))

        # Assert
        self.assertAlmostEqual(e2, 4.0 / 3.0, delta=1e-6)

    def test_circle_torus_slice(self):
        # Arrange
        r = 2.0
        model = ModelLoader.create(f"torus-circle:{r}")
        surface = SurfaceLoader.create("torus-slice:1", model)
        p = model.point(1.0, 0.5, 2.0)

        # Act
        e1 = el1_general(model, surface, p)
        e2 = el2_constant(model, surface, p)

        # Assert
        self.assertAlmostEqual(e1, 0.0, delta=1e-6)
        self.assertAlmostEqual(2.25 * e2, circle_torus_el2_scaled(r), delta=1e-6)


if __name__ == "__main__":
    unittest.main()
