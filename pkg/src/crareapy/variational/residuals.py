# src/crareapy/variational/residuals.py

"""
Euler-Lagrange residuals of E1 and E2.

The ``*_values`` functions are vectorized over surface locations and return NaN where
the residual is undefined; the public operations take a ChartPoint.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from crareapy.errors import InapplicableFormulaError, UndefinedResidualError
from crareapy.functionals.densities import first_order_fields, v_alpha_values
from crareapy.models.base import ChartPoint, ModelGeometry, raised_torsion
from crareapy.surfaces.base import SurfacePatch
from crareapy.surfaces.calculus import Direction, derivative_values, regular_location
from crareapy.surfaces.frame import mean_curvature_values

logger = logging.getLogger(__name__)

DEFAULT_TOL_HCR = 1e-8


@dataclass(frozen=True)
class ELIntermediates:
    """
    The h-symbols of the E1 residual at a point, with the tangential derivatives used.

    ``h11 = H``, ``h10 = e1(alpha) + alpha^2/2 - Im A11 + W/4`` and
    ``frak_f`` is defined through ``|H_cr| frak_f = h10 h111 + h11^2 h111/3 + h11 h110 + 3 h100/2``.
    """

    h11: float
    h10: float
    h00: float
    h111: float
    h110: float
    h100: float
    frak_f: float
    hcr: float
    V_ops: Dict[str, float] = field(default_factory=dict)


# second-order fields -------------------------------------------------------------

def _h10_field(surface: SurfacePatch):
    return lambda l: first_order_fields(surface, l)["h10"]


def _H_field(surface: SurfacePatch):
    return lambda l: mean_curvature_values(surface, l)


def second_order_fields(surface: SurfacePatch, loc: np.ndarray) -> Dict[str, np.ndarray]:
    """
    First-order fields plus ``e1(H)``, ``V(H)``, ``V(alpha)`` and ``V(h10)``.
    """
    loc = np.asarray(loc, dtype=float)
    frame = surface.frame(loc)
    fields = first_order_fields(surface, loc, frame)
    fields["e1_H"] = derivative_values(surface, _H_field(surface), loc, Direction.E1, 1, frame)
    fields["V_H"] = derivative_values(surface, _H_field(surface), loc, Direction.V, 1, frame)
    fields["V_alpha"] = v_alpha_values(surface, loc, frame)
    fields["V_h10"] = derivative_values(surface, _h10_field(surface), loc, Direction.V, 1, frame)
    return fields


def h_symbols(fields: Dict[str, np.ndarray]) -> Dict[str, np.ndarray]:
    """h00, h111, h110 and h100 from the second-order fields."""
    H, alpha, W = fields["H"], fields["alpha"], fields["W"]
    raised = raised_torsion(fields["re_a"] + 1j * fields["im_a"])
    re_up, im_up = raised.real, raised.imag
    extras = fields["extras"]
    e1_alpha = fields["e1_alpha"]
    h111 = fields["e1_H"] - 2.0 * alpha * H + 3.0 * re_up
    h110 = (
        fields["V_H"] - 3.0 * alpha * e1_alpha - 3.0 * alpha ** 3 - 1.5 * alpha * W
        + 3.0 * alpha * im_up + 3.0 * alpha * fields["im_a"] + 3.0 * extras.real
    )
    h100 = (
        fields["V_h10"] + alpha * H * e1_alpha + alpha ** 3 * H + 0.5 * alpha * H * W
        - alpha * H * im_up - alpha * H * fields["im_a"] - H * extras.real
    )
    h00 = fields["V_alpha"] + extras.imag - alpha * re_up
    return {"h00": h00, "h111": h111, "h110": h110, "h100": h100}


def scaled_f_from_symbols(fields: Dict[str, np.ndarray], symbols: Dict[str, np.ndarray]) -> np.ndarray:
    """``|H_cr| frak_f = h10 h111 + h11^2 h111 / 3 + h11 h110 + 3 h100 / 2``."""
    H = fields["H"]
    return fields["h10"] * symbols["h111"] + H ** 2 * symbols["h111"] / 3.0 + H * symbols["h110"] + 1.5 * symbols["h100"]


def scaled_f_expanded(fields: Dict[str, np.ndarray]) -> np.ndarray:
    """``|H_cr| frak_f`` written out term by term."""
    H, alpha, W = fields["H"], fields["alpha"], fields["W"]
    im_a = fields["im_a"]
    raised = raised_torsion(fields["re_a"] + 1j * im_a)
    re_up, im_up = raised.real, raised.imag
    re_x = fields["extras"].real
    e1_alpha = fields["e1_alpha"]
    return (
        (e1_alpha + 0.5 * alpha ** 2 + H ** 2 / 3.0 - im_a + 0.25 * W) * (fields["e1_H"] - 2.0 * alpha * H + 3.0 * re_up)
        + H * fields["V_H"] - 3.0 * alpha * H * e1_alpha - 3.0 * alpha ** 3 * H - 1.5 * alpha * H * W
        + 3.0 * alpha * H * im_up + 3.0 * alpha * H * im_a + 3.0 * H * re_x
        + 1.5 * fields["V_h10"] + 1.5 * alpha * H * e1_alpha + 1.5 * alpha ** 3 * H
        + 0.75 * alpha * H * W - 1.5 * alpha * H * im_up - 1.5 * alpha * H * im_a - 1.5 * H * re_x
    )


def scaled_f_cyz(fields: Dict[str, np.ndarray]) -> np.ndarray:
    """``|H_cr| frak_f`` for constant W and vanishing torsion."""
    H, alpha, W = fields["H"], fields["alpha"], fields["W"]
    e1_alpha = fields["e1_alpha"]
    # with constant W and A = 0, V(h10) = V(e1 alpha + alpha^2/2)
    return (
        fields["e1_H"] * (e1_alpha + 0.5 * alpha ** 2 + H ** 2 / 3.0 + 0.25 * W)
        + H * fields["V_H"]
        + 1.5 * fields["V_h10"]
        - 3.5 * alpha * H * e1_alpha
        - 2.5 * alpha ** 3 * H
        - 2.0 / 3.0 * alpha * H ** 3
        - 1.25 * alpha * H * W
    )


def _masked(values: np.ndarray, hcr: np.ndarray, tol_hcr: float) -> np.ndarray:
    return np.where(np.abs(hcr) > tol_hcr, values, np.nan)


def _el1_values(surface: SurfacePatch, loc: np.ndarray, tol_hcr: float, cyz: bool) -> np.ndarray:
    loc = np.asarray(loc, dtype=float)
    frame = surface.frame(loc)

    def weighted_f(l: np.ndarray) -> np.ndarray:
        fields = second_order_fields(surface, l)
        scaled = scaled_f_cyz(fields) if cyz else scaled_f_from_symbols(fields, h_symbols(fields))
        with np.errstate(divide="ignore", invalid="ignore"):
            return scaled / np.sqrt(np.abs(fields["hcr"]))

    fields = second_order_fields(surface, loc)
    hcr = fields["hcr"]
    root = np.sqrt(np.abs(hcr))
    H, alpha = fields["H"], fields["alpha"]
    if cyz:
        closing = 9.0 * fields["V_alpha"] + 6.0 * H * (fields["e1_alpha"] + 0.5 * alpha ** 2 + 0.25 * fields["W"]) + 2.0 / 3.0 * H ** 3
        scaled = scaled_f_cyz(fields)
    else:
        symbols = h_symbols(fields)
        closing = 9.0 * symbols["h00"] + 6.0 * H * fields["h10"] + 2.0 / 3.0 * H ** 3
        scaled = scaled_f_from_symbols(fields, symbols)
    with np.errstate(divide="ignore", invalid="ignore"):
        residual = (
            derivative_values(surface, weighted_f, loc, Direction.E1, 2, frame)
            + 1.5 * alpha * scaled / root
            + 0.5 * np.sign(hcr) * root * closing
        )
    return _masked(residual, hcr, tol_hcr)


def el1_general_values(surface: SurfacePatch, loc: np.ndarray, tol_hcr: float = DEFAULT_TOL_HCR) -> np.ndarray:
    """Vectorized general E1 residual; NaN where ``|H_cr| <= tol_hcr``."""
    return _el1_values(surface, loc, tol_hcr, cyz=False)


def el1_cyz_values(surface: SurfacePatch, loc: np.ndarray, tol_hcr: float = DEFAULT_TOL_HCR) -> np.ndarray:
    """Vectorized E1 residual in its constant-W, torsion-free form."""
    return _el1_values(surface, loc, tol_hcr, cyz=True)


def _el2_fields(surface: SurfacePatch, loc: np.ndarray) -> Dict[str, np.ndarray]:
    loc = np.asarray(loc, dtype=float)
    frame = surface.frame(loc)
    fields = second_order_fields(surface, loc)

    def e1_H(l):
        return derivative_values(surface, _H_field(surface), l, Direction.E1, 1)

    def V_H(l):
        return derivative_values(surface, _H_field(surface), l, Direction.V, 1)

    fields["e1e1_H"] = derivative_values(surface, e1_H, loc, Direction.E1, 2, frame)
    fields["e1V_H"] = derivative_values(surface, V_H, loc, Direction.E1, 2, frame)
    return fields


def _el2_cyz_scaled(fields: Dict[str, np.ndarray]) -> np.ndarray:
    H, alpha, W = fields["H"], fields["alpha"], fields["W"]
    e1_alpha, e1_H = fields["e1_alpha"], fields["e1_H"]
    return (
        H * fields["e1e1_H"] + 3.0 * fields["e1V_H"] + e1_H ** 2 + H ** 4 / 3.0
        + 3.0 * e1_alpha ** 2 + 12.0 * alpha ** 2 * e1_alpha + 12.0 * alpha ** 4
        - alpha * H * e1_H + 2.0 * H ** 2 * e1_alpha + 5.0 * alpha ** 2 * H ** 2
        + 1.5 * W * (e1_alpha + 2.0 / 3.0 * H ** 2 + 5.0 * alpha ** 2 + 0.5 * W)
    )


def el2_constant_values(surface: SurfacePatch, loc: np.ndarray) -> np.ndarray:
    """Vectorized E2 residual for constant W and constant purely imaginary torsion."""
    fields = _el2_fields(surface, loc)
    im_a, W, H, alpha = fields["im_a"], fields["W"], fields["H"], fields["alpha"]
    torsion_terms = 6.0 * im_a * (
        0.5 * im_a - fields["e1_alpha"] - 2.0 * alpha ** 2 - 0.625 * W - H ** 2 / 6.0
    )
    return 4.0 / 9.0 * (_el2_cyz_scaled(fields) + torsion_terms)


def el2_cyz_values(surface: SurfacePatch, loc: np.ndarray) -> np.ndarray:
    """Vectorized E2 residual for constant W and vanishing torsion."""
    return 4.0 / 9.0 * _el2_cyz_scaled(_el2_fields(surface, loc))


# public operations ---------------------------------------------------------------

def require_cyz(model: ModelGeometry) -> None:
    """
    Raises:
        InapplicableFormulaError: Unless W is constant and the torsion vanishes.
    """
    if not (model.has_constant_webster() and model.torsion_vanishes()):
        raise InapplicableFormulaError(
            f"CYZ form inapplicable: model '{model.name}' needs constant W and vanishing torsion."
        )


def require_constant_torsion(model: ModelGeometry) -> None:
    """
    Raises:
        InapplicableFormulaError: Unless W is constant and A11 is constant and purely imaginary.
    """
    if not (model.has_constant_webster() and model.has_constant_imaginary_torsion()):
        raise InapplicableFormulaError(
            f"Constant-torsion form inapplicable: model '{model.name}' needs constant W "
            f"and constant purely imaginary A11."
        )


def _single(values: np.ndarray, p: ChartPoint, tol_hcr: float) -> float:
    value = float(values[0])
    if np.isnan(value):
        raise UndefinedResidualError(f"Residual undefined (H_cr vanishes) at {p.coords}; |H_cr| <= {tol_hcr:g}.")
    return value


def el_intermediates(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> ELIntermediates:
    """
    The h-symbols and frak_f at a non-singular point.

    Raises:
        SingularPointError: If p is singular.
        UndefinedResidualError: If H_cr vanishes at p.
    """
    loc, _ = regular_location(model, surface, p)
    fields = second_order_fields(surface, loc)
    symbols = h_symbols(fields)
    hcr = float(fields["hcr"][0])
    if hcr == 0.0:
        raise UndefinedResidualError(f"Residual undefined (H_cr vanishes) at {p.coords}.")
    scaled = float(scaled_f_from_symbols(fields, symbols)[0])
    return ELIntermediates(
        h11=float(fields["H"][0]),
        h10=float(fields["h10"][0]),
        h00=float(symbols["h00"][0]),
        h111=float(symbols["h111"][0]),
        h110=float(symbols["h110"][0]),
        h100=float(symbols["h100"][0]),
        frak_f=scaled / abs(hcr),
        hcr=hcr,
        V_ops={k: float(fields[k][0]) for k in ("e1_H", "V_H", "e1_alpha", "V_alpha", "V_h10")},
    )


def el1_general(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint, tol_hcr: float = DEFAULT_TOL_HCR) -> float:
    """
    The E1 residual on a general pseudohermitian manifold.

    ``E1 = e1(|H_cr|^{1/2} f) + (3/2)|H_cr|^{1/2} alpha f
    + (1/2) sign(H_cr) |H_cr|^{1/2} (9 h00 + 6 h11 h10 + (2/3) h11^3)``.

    Raises:
        SingularPointError: If p is singular.
        UndefinedResidualError: If ``|H_cr| <= tol_hcr``.
    """
    loc, _ = regular_location(model, surface, p)
    return _single(el1_general_values(surface, loc, tol_hcr), p, tol_hcr)


def el1_cyz(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint, tol_hcr: float = DEFAULT_TOL_HCR) -> float:
    """
    The E1 residual for constant Webster curvature and vanishing torsion.

    Raises:
        InapplicableFormulaError: If the model has torsion or non-constant W.
        UndefinedResidualError: If ``|H_cr| <= tol_hcr``.
    """
    require_cyz(model)
    loc, _ = regular_location(model, surface, p)
    return _single(el1_cyz_values(surface, loc, tol_hcr), p, tol_hcr)


def el2_constant(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> float:
    """
    The E2 residual for constant W and constant purely imaginary torsion.

    Raises:
        InapplicableFormulaError: If the model violates the hypotheses.
        SingularPointError: If p is singular.
    """
    require_constant_torsion(model)
    loc, _ = regular_location(model, surface, p)
    return float(el2_constant_values(surface, loc)[0])


def el2_cyz(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> float:
    """
    The E2 residual for constant W and vanishing torsion.

    Raises:
        InapplicableFormulaError: If the model has torsion or non-constant W.
    """
    require_cyz(model)
    loc, _ = regular_location(model, surface, p)
    return float(el2_cyz_values(surface, loc)[0])
