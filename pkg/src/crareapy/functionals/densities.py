# src/crareapy/functionals/densities.py

from dataclasses import dataclass
from enum import Enum
from typing import Dict, Optional

import numpy as np

from crareapy.models.base import ChartPoint, ModelGeometry
from crareapy.surfaces.base import BaseFrame, SurfacePatch
from crareapy.surfaces.calculus import Direction, derivative_values, regular_location
from crareapy.surfaces.frame import alpha_values, e1_alpha_values, mean_curvature_values


class Functional(str, Enum):
    """The two CR-invariant surface energies."""

    E1 = "E1"
    E2 = "E2"


@dataclass(frozen=True)
class DensityValue:
    """
    Density scalars at a surface point.

    ``dA1_scalar`` is ``|H_cr|^{3/2}`` and ``dA2_scalar`` the dA2 bracket; each multiplies
    ``theta ^ e^1``, whose value on the parameter basis is ``area2form``. A part that was
    not requested is None.
    """

    p: ChartPoint
    dA1_scalar: Optional[float]
    dA2_scalar: Optional[float]
    area2form: float


def first_order_fields(surface: SurfacePatch, loc: np.ndarray, frame: Optional[BaseFrame] = None) -> Dict[str, np.ndarray]:
    """
    Frame data, model scalars and first tangential derivatives at the locations.

    Returns:
        dict: Arrays keyed by alpha, H, e1_alpha, im_a, re_a, W, extras, h10, hcr, singular.
    """
    loc = np.asarray(loc, dtype=float)
    if frame is None:
        frame = surface.frame(loc)
    points = surface.chart_points(loc)
    model = surface.model
    torsion = model.torsion(points)
    fields = {
        "alpha": frame.alpha,
        "singular": frame.singular,
        "H": mean_curvature_values(surface, loc, frame),
        "e1_alpha": e1_alpha_values(surface, loc, frame),
        "im_a": torsion.imag,
        "re_a": torsion.real,
        "W": model.webster(points),
        "extras": model.density_extras(points),
    }
    fields["h10"] = fields["e1_alpha"] + 0.5 * fields["alpha"] ** 2 - fields["im_a"] + 0.25 * fields["W"]
    fields["hcr"] = fields["h10"] + fields["H"] ** 2 / 6.0
    return fields


def v_alpha_values(surface: SurfacePatch, loc: np.ndarray, frame: Optional[BaseFrame] = None) -> np.ndarray:
    """``V(alpha)`` with ``V = T + alpha e2``."""
    return derivative_values(surface, lambda l: alpha_values(surface, l), loc, Direction.V, 0, frame)


def dA1_values(fields: Dict[str, np.ndarray]) -> np.ndarray:
    return np.abs(fields["hcr"]) ** 1.5


def dA2_values(fields: Dict[str, np.ndarray], v_alpha: np.ndarray) -> np.ndarray:
    """
    ``V(alpha) + (2/3)(e1 alpha + alpha^2/2 - Im A11 + W/4) H + (2/27) H^3
    + Im(extras) - alpha Re A11``.
    """
    H, alpha = fields["H"], fields["alpha"]
    return (
        v_alpha
        + 2.0 / 3.0 * fields["h10"] * H
        + 2.0 / 27.0 * H ** 3
        + fields["extras"].imag
        - alpha * fields["re_a"]
    )


def dA2_reduced_values(fields: Dict[str, np.ndarray]) -> np.ndarray:
    """
    The dA2 bracket without the exact part ``d(alpha e^1)``:
    ``[(2/3) e1 alpha + (4/3) alpha^2 - (2/3) Im A11 + W/6 + (2/27) H^2] H + Im(extras) - alpha Re A11``.
    """
    H, alpha = fields["H"], fields["alpha"]
    bracket = (
        2.0 / 3.0 * fields["e1_alpha"]
        + 4.0 / 3.0 * alpha ** 2
        - 2.0 / 3.0 * fields["im_a"]
        + fields["W"] / 6.0
        + 2.0 / 27.0 * H ** 2
    )
    return bracket * H + fields["extras"].imag - alpha * fields["re_a"]


def dA2_exact_values(fields: Dict[str, np.ndarray], v_alpha: np.ndarray) -> np.ndarray:
    """``d(alpha e^1) = (V(alpha) - alpha^2 H) theta ^ e^1``."""
    return v_alpha - fields["alpha"] ** 2 * fields["H"]


def density_values(surface: SurfacePatch, loc: np.ndarray, which: Functional) -> np.ndarray:
    """Vectorized density scalar of E1 or E2 (NaN at singular nodes)."""
    loc = np.asarray(loc, dtype=float)
    frame = surface.frame(loc)
    fields = first_order_fields(surface, loc, frame)
    if Functional(which) is Functional.E1:
        return dA1_values(fields)
    return dA2_values(fields, v_alpha_values(surface, loc, frame))


def _area_at(surface: SurfacePatch, loc: np.ndarray) -> float:
    params = surface.parameters_of(loc)
    return 1.0 if params is None else float(surface.area2form(params)[0])


def density_dA1(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> DensityValue:
    """
    The dA1 density ``|e1(alpha) + alpha^2/2 - Im A11 + W/4 + H^2/6|^{3/2}``.

    Raises:
        SingularPointError: If p is singular.
    """
    loc, frame = regular_location(model, surface, p)
    value = float(dA1_values(first_order_fields(surface, loc, frame))[0])
    return DensityValue(p, value, None, _area_at(surface, loc))


def density_dA2(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> DensityValue:
    """
    The dA2 bracket, including the model's density extras and ``-alpha Re A11``.

    Raises:
        SingularPointError: If p is singular.
    """
    loc, frame = regular_location(model, surface, p)
    fields = first_order_fields(surface, loc, frame)
    value = float(dA2_values(fields, v_alpha_values(surface, loc, frame))[0])
    return DensityValue(p, None, value, _area_at(surface, loc))


def dA2_decomposition(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> Dict[str, float]:
    """
    Split the dA2 bracket into its reduced part and the exact part ``V(alpha) - alpha^2 H``.

    Returns:
        dict: ``full``, ``reduced`` and ``exact`` scalars; ``full = reduced + exact``.
    """
    loc, frame = regular_location(model, surface, p)
    fields = first_order_fields(surface, loc, frame)
    v_alpha = v_alpha_values(surface, loc, frame)
    return {
        "full": float(dA2_values(fields, v_alpha)[0]),
        "reduced": float(dA2_reduced_values(fields)[0]),
        "exact": float(dA2_exact_values(fields, v_alpha)[0]),
    }
