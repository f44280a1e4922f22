# src/crareapy/surfaces/frame.py

"""
Adapted Legendrian frame, derivation function, p-mean curvature and H_cr.

The ``*_values`` functions are vectorized over surface locations and return NaN at
singular nodes; the public operations take a ChartPoint and raise typed errors.
"""

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from crareapy.models.base import ChartPoint, ModelGeometry, TangentVector, dot
from crareapy.surfaces.base import BaseFrame, SurfacePatch
from crareapy.surfaces.calculus import (
    Direction,
    derivative_values,
    direction_vectors,
    regular_location,
    stencil_locations,
    step_for,
)
from crareapy.utils.finite_differences import five_point


def mean_curvature_values(surface: SurfacePatch, loc: np.ndarray, frame: Optional[BaseFrame] = None) -> np.ndarray:
    """
    ``H = e1(phi) + omega(e1)``, with phi the angle of e1 in the (X, Y) frame.

    The angle is differentiated relative to the base direction, so no branch cut enters.
    """
    loc = np.asarray(loc, dtype=float)
    if frame is None:
        frame = surface.frame(loc)
    n = loc.shape[0]
    h = step_for(0)
    e1 = direction_vectors(surface, loc, Direction.E1, frame)
    shifted = surface.frame(stencil_locations(surface, loc, e1, h)).c1.reshape(4, n, 2)
    base = np.broadcast_to(frame.c1, shifted.shape)
    cross = base[..., 0] * shifted[..., 1] - base[..., 1] * shifted[..., 0]
    inner = base[..., 0] * shifted[..., 0] + base[..., 1] * shifted[..., 1]
    turning = five_point(np.arctan2(cross, inner), h)
    return turning + dot(surface.model.omega(surface.chart_points(loc)), e1)


def covariant_mean_curvature_values(
    surface: SurfacePatch, loc: np.ndarray, frame: Optional[BaseFrame] = None
) -> np.ndarray:
    """
    H from ``nabla_{e1} e1`` paired with e2 by differentiating the coefficients of e1.
    """
    loc = np.asarray(loc, dtype=float)
    if frame is None:
        frame = surface.frame(loc)
    d_c1 = derivative_values(surface, lambda l: surface.frame(l).c1, loc, Direction.E1, 0, frame)
    e1 = direction_vectors(surface, loc, Direction.E1, frame)
    rotation = dot(surface.model.omega(surface.chart_points(loc)), e1)
    cx, cy = frame.c1[:, 0], frame.c1[:, 1]
    return cx * d_c1[:, 1] - cy * d_c1[:, 0] + rotation


def alpha_values(surface: SurfacePatch, loc: np.ndarray) -> np.ndarray:
    return surface.frame(loc).alpha


def e1_alpha_values(surface: SurfacePatch, loc: np.ndarray, frame: Optional[BaseFrame] = None) -> np.ndarray:
    return derivative_values(surface, lambda l: alpha_values(surface, l), loc, Direction.E1, 0, frame)


def hcr_values(surface: SurfacePatch, loc: np.ndarray, frame: Optional[BaseFrame] = None) -> np.ndarray:
    """``H_cr = e1(alpha) + alpha^2/2 - Im A11 + W/4 + H^2/6``."""
    loc = np.asarray(loc, dtype=float)
    if frame is None:
        frame = surface.frame(loc)
    points = surface.chart_points(loc)
    H = mean_curvature_values(surface, loc, frame)
    return (
        e1_alpha_values(surface, loc, frame)
        + 0.5 * frame.alpha ** 2
        - surface.model.torsion(points).imag
        + 0.25 * surface.model.webster(points)
        + H ** 2 / 6.0
    )


@dataclass(frozen=True)
class FramePointData:
    """
    Adapted data at one surface point.

    ``area2form`` is ``(theta ^ e^1)(F_u, F_v)`` when the point has surface parameters;
    otherwise it is taken on the basis (V, e1), where it equals 1.
    """

    p: ChartPoint
    e1: TangentVector
    e2: TangentVector
    alpha: float
    H: float
    H_cr: float
    area2form: float
    singular: bool = False


def legendrian_frame(
    model: ModelGeometry, surface: SurfacePatch, p: ChartPoint
) -> Tuple[TangentVector, TangentVector, bool]:
    """
    Legendrian frame (e1, e2 = J e1) at a surface point.

    Singular points are reported through the flag; their frame components are NaN.

    Returns:
        tuple: (e1, e2, singular).

    Raises:
        NotOnSurfaceError: If p is not on the surface.
        ChartDomainError: If p lies outside the chart.
    """
    if surface.model is not model:
        raise ValueError(f"Surface '{surface.name}' was not built on model '{model.name}'.")
    loc = surface.locate(p)
    frame = surface.frame(loc)
    e1, e2, _ = surface.frame_vectors(loc, frame)
    return (
        TangentVector(p, tuple(e1[0])),
        TangentVector(p, tuple(e2[0])),
        bool(frame.singular[0]),
    )


def derivation_alpha(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> float:
    """
    The derivation function: the unique alpha with ``T + alpha e2`` tangent to the surface.

    Raises:
        SingularPointError: If p is singular.
    """
    _, frame = regular_location(model, surface, p)
    return float(frame.alpha[0])


def p_mean_curvature(
    model: ModelGeometry, surface: SurfacePatch, p: ChartPoint, method: str = "rotation"
) -> float:
    """
    p-mean curvature H, defined by ``nabla_{e1} e1 = H e2``.

    Args:
        method (str): "rotation" (angle of e1 differentiated along the surface) or
            "covariant" (direct covariant differentiation of the e1 field).

    Raises:
        SingularPointError: If p is singular.
    """
    loc, frame = regular_location(model, surface, p)
    if method == "rotation":
        return float(mean_curvature_values(surface, loc, frame)[0])
    if method == "covariant":
        return float(covariant_mean_curvature_values(surface, loc, frame)[0])
    raise ValueError(f"Method '{method}' is not supported.")


def h_cr(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> float:
    """
    ``H_cr = e1(alpha) + alpha^2/2 - Im A11 + W/4 + H^2/6``.

    Raises:
        SingularPointError: If p is singular.
    """
    loc, frame = regular_location(model, surface, p)
    return float(hcr_values(surface, loc, frame)[0])


def frame_point_data(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint) -> FramePointData:
    """
    All adapted data at a non-singular point.

    Raises:
        SingularPointError: If p is singular.
    """
    loc, frame = regular_location(model, surface, p)
    e1, e2, _ = surface.frame_vectors(loc, frame)
    params = surface.parameters_of(loc)
    area = 1.0 if params is None else float(surface.area2form(params)[0])
    return FramePointData(
        p=p,
        e1=TangentVector(p, tuple(e1[0])),
        e2=TangentVector(p, tuple(e2[0])),
        alpha=float(frame.alpha[0]),
        H=float(mean_curvature_values(surface, loc, frame)[0]),
        H_cr=float(hcr_values(surface, loc, frame)[0]),
        area2form=area,
        singular=False,
    )
