# src/crareapy/verify/lemmas.py

import logging
import time
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Tuple, Type

import numpy as np
from scipy.optimize import bisect

from crareapy.functionals.densities import Functional
from crareapy.functionals.quadrature import integrate
from crareapy.models.base import ModelGeometry
from crareapy.models.model_loader import ModelLoader
from crareapy.surfaces.base import SurfacePatch
from crareapy.surfaces.families import cylinder, graph_t2, plane, rossi_sigma, torus_slice
from crareapy.surfaces.frame import alpha_values, hcr_values, mean_curvature_values
from crareapy.surfaces.reference import (
    clifford_el2_scaled,
    clifford_hcr,
    circle_torus_el2_scaled,
    cylinder_H,
    ellipse_hcr_endpoints,
    plane_el2,
    plane_H,
    rossi_sigma_energy,
)
from crareapy.utils.finite_differences import evaluate_in_chunks
from crareapy.variational.first_variation import Deformation, bump_grid, first_variation
from crareapy.variational.residuals import (
    el1_cyz_values,
    el1_general_values,
    el2_constant_values,
    el2_cyz_values,
    require_constant_torsion,
    require_cyz,
)
from crareapy.verify.report import Expectation, LemmaReport, MeasuredRow, above, below, equal
from crareapy.verify.scans import (
    CLIFFORD_ZERO,
    divergent_tails,
    ellipse_hcr_root,
    scan_rossi_E2,
    spot_check_no_zero_E1,
)

logger = logging.getLogger(__name__)

CLIFFORD_C = 1.0 / np.sqrt(2.0)
CYLINDER_33 = 1.0 - np.sqrt(2.0 - np.sqrt(3.0))
RESIDUAL_GRID = (8, 8)
EDGE_INSET = 0.02
RESIDUAL_INSET = 0.1
BUMPS = 10
MAX_BUMP_WIDTH = 0.5
TAIL_SAMPLES = 5


def sample_locations(surface: SurfacePatch, shape: Tuple[int, int], inset: float = EDGE_INSET) -> np.ndarray:
    """Surface locations of a parameter grid."""
    return surface.grid_locations(surface.sample_parameters(shape, inset))


def max_abs(values: np.ndarray) -> float:
    """Largest absolute value; NaN if any entry is NaN."""
    return float(np.max(np.abs(values)))


class LemmaCheck(ABC):
    """
    Abstract base class for registered checks.

    Subclasses set the class attributes and implement ``measure``.

    Attributes:
        lemma_id (str): Registry id.
        expectation (Expectation): Whether the claim is expected to hold numerically.
        note (str): Explanation shown with the report.
        default_grid (tuple): Sampling grid used when no grid is given.
    """

    lemma_id: str = ""
    expectation: Expectation = Expectation.HOLDS
    note: str = ""
    default_grid: Tuple[int, int] = (64, 64)

    def __init__(self, grid: Optional[Tuple[int, int]] = None, seed: int = 0) -> None:
        self.grid = tuple(int(n) for n in (grid or self.default_grid))
        self.seed = seed

    @property
    def energy_grid(self) -> Tuple[int, int]:
        """Quadrature grid; the quadrature refines it once more."""
        return tuple(max(8, n // 2) for n in self.grid)

    @abstractmethod
    def measure(self) -> List[MeasuredRow]:
        """
        Run the numeric protocol.

        Returns:
            list: The measured rows.
        """
        pass

    def run(self) -> LemmaReport:
        start = time.perf_counter()
        rows = self.measure()
        elapsed = int(round(1000.0 * (time.perf_counter() - start)))
        report = LemmaReport(self.lemma_id, rows, elapsed, self.expectation, self.note)
        logger.debug("lemma %s: %s in %d ms", self.lemma_id, report.status, elapsed)
        return report

    # shared measurements ----------------------------------------------------

    def max_hcr(self, surface: SurfacePatch, grid: Optional[Tuple[int, int]] = None) -> float:
        loc = sample_locations(surface, grid or self.grid)
        return max_abs(evaluate_in_chunks(lambda l: hcr_values(surface, l), loc))

    def energy(self, model: ModelGeometry, surface: SurfacePatch, which: Functional = Functional.E1) -> float:
        return integrate(model, surface, which, self.energy_grid).value

    @staticmethod
    def residual_locations(surface: SurfacePatch) -> np.ndarray:
        return sample_locations(surface, RESIDUAL_GRID, RESIDUAL_INSET)


def _disk():
    return ModelLoader.create("disk-bundle")


class PlaneZeroEnergy(LemmaCheck):
    lemma_id = "3.1"
    default_grid = (128, 128)

    def measure(self) -> List[MeasuredRow]:
        model = _disk()
        surface = plane(model, 0.0, 1.0, np.sqrt(3.0) / 2.0)
        rows = [
            below("max|H_cr| plane 0,1,sqrt(3)/2", self.max_hcr(surface), 1e-8),
            below("E1 plane 0,1,sqrt(3)/2", self.energy(model, surface), 1e-9),
        ]
        rng = np.random.default_rng(self.seed)
        for a, b in rng.uniform(-1.0, 1.0, size=(10, 2)):
            c = np.sqrt(3.0 * (a ** 2 + b ** 2)) / 2.0
            member = plane(model, a, b, c)
            rows.append(below(f"max|H_cr| plane {a:.4f},{b:.4f},{c:.4f}", self.max_hcr(member, (16, 16)), 1e-8))
        return rows


class PlaneCritical(LemmaCheck):
    lemma_id = "3.2"
    expectation = Expectation.REFUTED
    note = (
        "On vertical planes E1 is a positive multiple of H(2H^2/3 - 3/4), which vanishes for "
        "c^2/(a^2+b^2) = 9/8, not 3/8; that plane misses the disk. The c = 0 plane is critical."
    )

    def measure(self) -> List[MeasuredRow]:
        model = _disk()
        rows = []
        for label, c in (("c=0", 0.0), ("c^2=3/8", np.sqrt(3.0 / 8.0))):
            surface = plane(model, 0.0, 1.0, c)
            loc = self.residual_locations(surface)
            general = el1_general_values(surface, loc)
            rows.append(below(f"max|E1 residual| plane {label}", max_abs(general), 1e-6))
            rows.append(below(
                f"max|general - CYZ| plane {label}", max_abs(general - el1_cyz_values(surface, loc)), 1e-6
            ))
            rows.append(equal(
                f"max|H - H_closed| plane {label}",
                max_abs(mean_curvature_values(surface, loc) - plane_H(0.0, 1.0, c)), 0.0, 1e-8,
            ))
            rows.append(above(f"E1 plane {label}", self.energy(model, surface), 0.0))
        return rows


class CylinderZeroEnergy(LemmaCheck):
    lemma_id = "3.3"
    expectation = Expectation.REFUTED
    note = (
        "The cylinder r = rho has H = -(1+rho^2)/(2 rho), so H^2 >= 1 and H_cr >= 1/24 on every "
        "vertical cylinder; no cylinder has zero energy."
    )

    def measure(self) -> List[MeasuredRow]:
        model = _disk()
        surface = cylinder(model, CYLINDER_33)
        loc = sample_locations(surface, (16, 16))
        return [
            below("max|H_cr| cylinder 1-sqrt(2-sqrt(3))", self.max_hcr(surface), 1e-7),
            below("E1 cylinder 1-sqrt(2-sqrt(3))", self.energy(model, surface), 1e-9),
            equal(
                "max|H + (1+r^2)/(2r)|",
                max_abs(mean_curvature_values(surface, loc) - cylinder_H(CYLINDER_33)), 0.0, 1e-8,
            ),
        ]


class GraphCritical(LemmaCheck):
    lemma_id = "3.4"
    default_grid = (32, 32)

    def measure(self) -> List[MeasuredRow]:
        model = _disk()
        surface = graph_t2(model, 1.0)
        loc = sample_locations(surface, (16, 16))
        r = np.hypot(*surface.chart_points(loc)[:, :2].T)
        return [
            below("max|E1 residual| graph t^2=1", max_abs(el1_general_values(surface, self.residual_locations(surface))), 1e-5),
            equal("max|alpha - 1/(2r)|", max_abs(alpha_values(surface, loc) - 0.5 / r), 0.0, 1e-8),
            equal("max|H|", max_abs(mean_curvature_values(surface, loc)), 0.0, 1e-8),
            above("E1 graph t^2=1", self.energy(model, surface), 0.0),
        ]


class CylinderCritical(LemmaCheck):
    lemma_id = "cylinder-e1-critical"
    default_grid = (32, 32)
    note = "Vertical cylinder r = 1/sqrt(2): H^2 = 9/8 is the nonzero root of H(2H^2/3 - 3/4)."

    def measure(self) -> List[MeasuredRow]:
        model = _disk()
        surface = cylinder(model, 1.0 / np.sqrt(2.0))
        loc = self.residual_locations(surface)
        return [
            below("max|E1 residual| cylinder 1/sqrt(2)", max_abs(el1_general_values(surface, loc)), 1e-6),
            equal("H^2", float(np.mean(mean_curvature_values(surface, loc) ** 2)), 9.0 / 8.0, 1e-8),
            above("E1 cylinder 1/sqrt(2)", self.energy(model, surface), 0.0),
        ]


class PlaneBothCritical(LemmaCheck):
    lemma_id = "4.1"

    def measure(self) -> List[MeasuredRow]:
        model = _disk()
        require_cyz(model)
        critical = plane(model, 0.0, 1.0, np.sqrt(3.0) / 2.0)
        flat = plane(model, 0.0, 1.0, 0.0)
        loc_critical = self.residual_locations(critical)
        loc_flat = self.residual_locations(flat)
        e2_flat = el2_cyz_values(flat, loc_flat)
        return [
            below("max|E2 residual| plane c^2=3/4", max_abs(el2_cyz_values(critical, loc_critical)), 1e-6),
            equal("max|E2 - 1/12| plane c=0", max_abs(e2_flat - plane_el2(0.0)), 0.0, 1e-6),
            below("max|constant - CYZ| plane c=0", max_abs(el2_constant_values(flat, loc_flat) - e2_flat), 1e-6),
        ]


class CylinderBothCritical(LemmaCheck):
    lemma_id = "4.2"
    expectation = Expectation.REFUTED
    note = (
        "E2 on a vertical surface with constant H is (4/27)(H^2 - 3/4)^2; on cylinders H^2 >= 1, "
        "so E2 >= 1/108 and the cylinder is not critical for E2."
    )

    def measure(self) -> List[MeasuredRow]:
        model = _disk()
        surface = cylinder(model, CYLINDER_33)
        loc = self.residual_locations(surface)
        residual = el2_cyz_values(surface, loc)
        H = mean_curvature_values(surface, loc)
        return [
            below("max|E2 residual| cylinder 1-sqrt(2-sqrt(3))", max_abs(residual), 1e-6),
            equal("max|E2 - (4/27)(H^2-3/4)^2|", max_abs(residual - plane_el2(H)), 0.0, 1e-6),
        ]


def _clifford(t: float):
    model = ModelLoader.create(f"rossi:{float(t)!r}")
    return model, rossi_sigma(model, CLIFFORD_C)


class CliffordZeroEnergy(LemmaCheck):
    lemma_id = "5.1"
    default_grid = (32, 32)

    def measure(self) -> List[MeasuredRow]:
        model, surface = _clifford(CLIFFORD_ZERO)
        return [
            below("|H_cr| closed form, t=4-sqrt(15)", abs(clifford_hcr(CLIFFORD_ZERO)), 1e-10),
            below("max|H_cr| numeric, t=4-sqrt(15)", self.max_hcr(surface), 1e-6),
            below("E1, t=4-sqrt(15)", self.energy(model, surface), 1e-8),
        ]


class CliffordCritical(LemmaCheck):
    lemma_id = "5.2"
    default_grid = (64, 64)

    def measure(self) -> List[MeasuredRow]:
        rows = []
        for t in (0.0, 0.3, -0.4):
            model, surface = _clifford(t)
            energy = self.energy(model, surface)
            rows.append(below(f"max|E1 residual| t={t:g}", max_abs(el1_general_values(surface, self.residual_locations(surface))), 1e-5))
            rows.append(above(f"E1 t={t:g}", energy, 0.1))
            rows.append(equal(f"E1 vs closed form t={t:g}", energy, rossi_sigma_energy(CLIFFORD_C, t, "E1"), 1e-4))
            if t == 0.0:
                rows.append(equal("E1 t=0", energy, 6.97886, 1e-3))
        return rows


class CliffordE2Root(LemmaCheck):
    lemma_id = "5.4"
    note = (
        "On the Clifford torus (9/4)E2 = 3(t^2 - 8t + 1)/(1 + t)^2, so E2(0) = 4/3; "
        "the root t = 4 - sqrt(15) is unaffected."
    )

    def measure(self) -> List[MeasuredRow]:
        root = bisect(clifford_el2_scaled, 0.0, 0.5, xtol=1e-14)
        rows = [equal("bisection root of E2(t)", root, 0.1270166538, 1e-8)]
        model, surface = _clifford(CLIFFORD_ZERO)
        require_constant_torsion(model)
        rows.append(below("max|E2 residual| t=4-sqrt(15)", max_abs(el2_constant_values(surface, self.residual_locations(surface))), 1e-6))
        for t in (0.0, 0.3, -0.3):
            model, surface = _clifford(t)
            residual = el2_constant_values(surface, self.residual_locations(surface))
            rows.append(above(f"min|E2 residual| t={t:g}", float(np.min(np.abs(residual))), 0.01))
            if t == 0.0:
                rows.append(equal("max|E2 - 4/3| t=0", max_abs(residual - 4.0 / 3.0), 0.0, 1e-6))
        return rows


def _circle_torus(r: float):
    model = ModelLoader.create(f"torus-circle:{float(r)!r}")
    return model, torus_slice(model, 0.0)


class CircleTorusCritical(LemmaCheck):
    lemma_id = "6.1"
    default_grid = (32, 32)

    def measure(self) -> List[MeasuredRow]:
        rows = []
        for r in (0.5, 1.0, 2.0):
            model, surface = _circle_torus(r)
            require_constant_torsion(model)
            loc = self.residual_locations(surface)
            rows.extend([
                equal(f"max|H| r={r:g}", max_abs(mean_curvature_values(surface, loc)), 0.0, 1e-8),
                equal(f"max|H_cr - 5/(8r)| r={r:g}", max_abs(hcr_values(surface, loc) - 5.0 / (8.0 * r)), 0.0, 1e-8),
                below(f"max|E1 residual| r={r:g}", max_abs(el1_general_values(surface, loc)), 1e-6),
                equal(
                    f"max|(9/4)E2 - 15/(8r^2)| r={r:g}",
                    max_abs(2.25 * el2_constant_values(surface, loc) - circle_torus_el2_scaled(r)), 0.0, 1e-6,
                ),
                above(f"E1 r={r:g}", self.energy(model, surface), 0.0),
            ])
        return rows


class EllipseTorusZeroEnergy(LemmaCheck):
    lemma_id = "6.2"
    default_grid = (32, 32)

    def measure(self) -> List[MeasuredRow]:
        a, b = 2.0, 1.0
        model = ModelLoader.create(f"torus-ellipse:{a!r},{b!r}")
        start, end = ellipse_hcr_endpoints(a, b)
        slices = {"t=0": 0.0, "t=pi/2": float(model.curve.arclength_of(0.5 * np.pi)[0])}
        rows = []
        for (label, s), expected in zip(slices.items(), (start, end)):
            surface = torus_slice(model, s)
            value = float(np.mean(hcr_values(surface, self.residual_locations(surface))))
            rows.append(equal(f"H_cr at {label}", value, expected, 1e-6))
        t0, s0 = ellipse_hcr_root(a, b)
        surface = torus_slice(model, s0)
        rows.append(below("max|H_cr| at the root slice", self.max_hcr(surface, RESIDUAL_GRID), 1e-8))
        rows.append(below("E1 at the root slice", self.energy(model, surface), 1e-6))
        logger.debug("ellipse root t0=%.12g s0=%.12g", t0, s0)
        return rows


class RossiE2Unbounded(LemmaCheck):
    lemma_id = "rossi-e2-unbounded"
    note = "E2 of the Rossi tori diverges to +inf as c -> 1 and to -inf as c -> 0."

    def measure(self) -> List[MeasuredRow]:
        c_values = np.linspace(0.02, 0.98, 64)
        scan = scan_rossi_E2(c_values, 0.2, numeric=False)
        tails = divergent_tails(scan, tail=TAIL_SAMPLES)
        outer = np.concatenate([c_values[:TAIL_SAMPLES], c_values[-TAIL_SAMPLES:]])
        numeric = scan_rossi_E2(outer, 0.2, grid=(24, 24))
        numeric_tails = divergent_tails(numeric, column="E2", tail=TAIL_SAMPLES)
        closed = numeric["E2_closed_form"].to_numpy()
        deviation = np.abs(numeric["E2"].to_numpy() - closed) / np.maximum(1.0, np.abs(closed))
        symmetric = np.linspace(0.1, 0.6, 6)
        mirrored = [rossi_sigma_energy(c, 0.0) + rossi_sigma_energy(np.sqrt(1.0 - c ** 2), 0.0) for c in symmetric]
        return [
            equal("upper tail increasing, t=0.2", float(tails["upper"]), 1.0, 0.0),
            equal("lower tail decreasing, t=0.2", float(tails["lower"]), 1.0, 0.0),
            equal("upper tail increasing, numeric, t=0.2", float(numeric_tails["upper"]), 1.0, 0.0),
            equal("lower tail decreasing, numeric, t=0.2", float(numeric_tails["lower"]), 1.0, 0.0),
            below("max relative |E2 numeric - closed form| on the tails, t=0.2", float(np.max(deviation)), 1e-3),
            below("max|E2(c) + E2(sqrt(1-c^2))|, t=0", max_abs(np.array(mirrored)), 1e-8),
            below("|E2| Clifford torus, t=0.2", abs(rossi_sigma_energy(CLIFFORD_C, 0.2)), 1e-10),
        ]


class NoZeroEnergySpotCheck(LemmaCheck):
    lemma_id = "no-zero-e1-spot"
    note = "NON-PROOF: positivity of E1 on sampled family members only."

    def measure(self) -> List[MeasuredRow]:
        rossi = spot_check_no_zero_E1("rossi:0", "rossi-sigma", 5)
        torus = spot_check_no_zero_E1("torus-circle:1", "torus-slice", 3)
        slice_area = 4.0 * np.pi ** 2 / np.sqrt(2.0)
        return [
            above("min E1 Rossi tori, t=0", rossi.minimum, 0.1, rossi.label),
            equal("min E1 circle-torus slices", torus.minimum, (5.0 / 8.0) ** 1.5 * slice_area, 1e-6, torus.label),
        ]


def _certified_E1_critical():
    """Surfaces whose E1 residual vanishes identically, with labels."""
    disk = _disk()
    yield "plane c=0", disk, plane(disk, 0.0, 1.0, 0.0)
    yield "graph t^2=1", disk, graph_t2(disk, 1.0)
    yield "cylinder 1/sqrt(2)", disk, cylinder(disk, 1.0 / np.sqrt(2.0))
    for t in (0.0, 0.3, -0.4):
        model, surface = _clifford(t)
        yield f"Clifford t={t:g}", model, surface
    for r in (0.5, 1.0, 2.0):
        model, surface = _circle_torus(r)
        yield f"circle torus r={r:g}", model, surface


def bump_width(surface: SurfacePatch) -> float:
    (u0, u1), (v0, v1) = surface.box
    return min(0.2 * min(u1 - u0, v1 - v0), MAX_BUMP_WIDTH)


def family_derivative(energy, c: float, dc: float = 1e-3) -> float:
    """``dE/dc`` by central differences at ``dc`` and ``dc/2`` with Richardson extrapolation."""
    coarse = (energy(c + dc) - energy(c - dc)) / (2.0 * dc)
    fine = (energy(c + 0.5 * dc) - energy(c - 0.5 * dc)) / dc
    return (4.0 * fine - coarse) / 3.0


class FirstVariation(LemmaCheck):
    lemma_id = "first-variation"
    default_grid = (32, 32)
    note = (
        "Unconstrained first variations under random bumps f e2 + g T. E2 stationarity at "
        "t = 4 - sqrt(15) is measured on the variations that keep the torus admissible: "
        "Reeb bumps g T and the uniform shift of rho1 = c."
    )

    def variations(self, model: ModelGeometry, surface: SurfacePatch, which: Functional, weights=None) -> np.ndarray:
        width = bump_width(surface)
        grid = bump_grid(surface, width, self.grid)
        values = []
        for k in range(BUMPS):
            d = Deformation.random(self.seed + k, surface.box, width=width)
            if weights is not None:
                d = Deformation(d.center, d.width, *weights)
            values.append(first_variation(model, surface, which, d, grid))
        return np.abs(np.array(values))

    def measure(self) -> List[MeasuredRow]:
        rows = []
        for label, model, surface in _certified_E1_critical():
            rows.append(below(f"max|dE1/dt| {label}, {BUMPS} bumps", float(np.max(self.variations(model, surface, Functional.E1))), 1e-4))

        model, surface = _clifford(CLIFFORD_ZERO)
        reeb = self.variations(model, surface, Functional.E2, weights=(0.0, 1.0))
        rows.append(below(f"max|dE2/dt| t=4-sqrt(15), {BUMPS} Reeb bumps", float(np.max(reeb)), 1e-4))
        shift = family_derivative(lambda c: rossi_sigma_energy(c, CLIFFORD_ZERO), CLIFFORD_C)
        rows.append(below("|dE2/dc| rho1 = c, t=4-sqrt(15)", abs(shift), 1e-6))

        model, surface = _clifford(0.0)
        rows.append(above(f"max|dE2/dt| t=0, {BUMPS} bumps", float(np.max(self.variations(model, surface, Functional.E2))), 0.01))
        shift = family_derivative(lambda c: rossi_sigma_energy(c, 0.0), CLIFFORD_C)
        rows.append(above("|dE2/dc| rho1 = c, t=0", abs(shift), 0.01))
        return rows


class NormalE2Variation(LemmaCheck):
    lemma_id = "e2-normal-variation"
    expectation = Expectation.REFUTED
    default_grid = (32, 32)
    note = (
        "At t = 4 - sqrt(15) the E2 residual of the Clifford torus vanishes, yet a compact "
        "normal bump f e2 has a nonzero first variation. A vanishing residual implies "
        "stationarity only for variations subject to e1(h) + 2 alpha h = h."
    )

    def measure(self) -> List[MeasuredRow]:
        model, surface = _clifford(CLIFFORD_ZERO)
        d = Deformation((np.pi, np.pi), 0.5, 1.0, 0.0)
        value = first_variation(model, surface, Functional.E2, d, bump_grid(surface, d.width, self.grid))
        return [
            below("max|E2 residual| t=4-sqrt(15)", max_abs(el2_constant_values(surface, self.residual_locations(surface))), 1e-6),
            below("|dE2/dt| f e2 bump, t=4-sqrt(15)", abs(value), 1e-4),
        ]


LEMMAS: Dict[str, Type[LemmaCheck]] = {
    check.lemma_id: check
    for check in (
        PlaneZeroEnergy,
        PlaneCritical,
        CylinderZeroEnergy,
        GraphCritical,
        PlaneBothCritical,
        CylinderBothCritical,
        CliffordZeroEnergy,
        CliffordCritical,
        CliffordE2Root,
        CircleTorusCritical,
        EllipseTorusZeroEnergy,
        CylinderCritical,
        RossiE2Unbounded,
        NoZeroEnergySpotCheck,
        FirstVariation,
        NormalE2Variation,
    )
}


def verify_lemma(lemma_id: str, grid: Optional[Tuple[int, int]] = None, seed: int = 0) -> LemmaReport:
    """
    Run the numeric protocol of a registered check.

    Args:
        lemma_id (str): Registry id such as "5.4" or "cylinder-e1-critical".
        grid (tuple, optional): Sampling grid; each check has its own default.
        seed (int): Seed of randomized members.

    Returns:
        LemmaReport: The report.

    Raises:
        ValueError: If the id is not registered.
    """
    key = str(lemma_id).strip().lower()
    if key not in LEMMAS:
        raise ValueError(f"Lemma '{lemma_id}' is not registered.")
    return LEMMAS[key](grid, seed).run()
