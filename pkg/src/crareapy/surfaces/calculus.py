# src/crareapy/surfaces/calculus.py

"""
Intrinsic derivatives of scalar fields along e1 and V = T + alpha e2.

A scalar field on a surface is a vectorized callable of surface locations. Derivatives
move each location along a surface curve tangent to the direction and combine the
samples with the five-point stencil, so iterated derivatives never need an ambient
extension.
"""

from enum import Enum
from typing import Callable, Optional

import numpy as np

from crareapy.errors import CRGeometryError, SingularPointError
from crareapy.models.base import ChartPoint, ModelGeometry
from crareapy.surfaces.base import BaseFrame, SurfacePatch
from crareapy.utils.finite_differences import STENCIL_OFFSETS, five_point

# Levi-length steps by nesting level: a field already holding k derivatives is
# differentiated with DERIVATIVE_STEPS[k]
DERIVATIVE_STEPS = (2e-3, 6e-3, 1.8e-2)

SurfaceField = Callable[[np.ndarray], np.ndarray]


class Direction(str, Enum):
    """Tangential directions: the Legendrian e1 and V = T + alpha e2."""

    E1 = "e1"
    V = "V"


def step_for(level: int) -> float:
    """Stencil step for a field that already carries ``level`` nested derivatives."""
    if not 0 <= level < len(DERIVATIVE_STEPS):
        raise ValueError(f"Nesting level must lie in [0, {len(DERIVATIVE_STEPS)}), got {level}.")
    return DERIVATIVE_STEPS[level]


def direction_vectors(
    surface: SurfacePatch, loc: np.ndarray, direction: Direction, frame: Optional[BaseFrame] = None
) -> np.ndarray:
    """Chart components of e1 or V at the locations."""
    e1, _, V = surface.frame_vectors(loc, frame)
    return e1 if Direction(direction) is Direction.E1 else V


def stencil_locations(surface: SurfacePatch, loc: np.ndarray, vectors: np.ndarray, h: float) -> np.ndarray:
    """
    Stack the four shifted copies ``shift(loc, k h v)``, k in (-2, -1, 1, 2).

    Returns:
        np.ndarray: Locations of shape (4N, k), ordered offset-major.
    """
    return np.concatenate([surface.shift(loc, k * h * vectors) for k in STENCIL_OFFSETS])


def derivative_values(
    surface: SurfacePatch,
    field: SurfaceField,
    loc: np.ndarray,
    direction: Direction,
    level: int = 0,
    frame: Optional[BaseFrame] = None,
) -> np.ndarray:
    """
    Vectorized tangential derivative of ``field`` at the locations.

    Singular locations yield NaN.

    Args:
        surface (SurfacePatch): The surface.
        field (Callable): Scalar (or vector-valued) field of locations.
        loc (np.ndarray): Locations, shape (N, k).
        direction (Direction): E1 or V.
        level (int): Number of derivatives nested inside ``field``.
        frame (BaseFrame, optional): Precomputed frame at ``loc``.

    Returns:
        np.ndarray: Derivative values, one row per location.
    """
    loc = np.asarray(loc, dtype=float)
    n = loc.shape[0]
    h = step_for(level)
    vectors = direction_vectors(surface, loc, direction, frame)
    values = np.asarray(field(stencil_locations(surface, loc, vectors, h)))
    return five_point(values.reshape((4, n) + values.shape[1:]), h)


def check_tangent(surface: SurfacePatch, loc: np.ndarray, vectors: np.ndarray, tol: float = 1e-6) -> None:
    """
    Check that chart vectors are tangent to the surface.

    Raises:
        CRGeometryError: If a vector leaves the tangent plane by more than ``tol``.
    """
    defect = surface.tangency_defect(loc, vectors)
    if np.any(defect > tol):
        raise CRGeometryError(
            f"Direction is not tangent to surface '{surface.name}' (defect {float(np.max(defect)):.3g})."
        )


def regular_location(model: ModelGeometry, surface: SurfacePatch, p: ChartPoint):
    """
    Locate a chart point on the surface and require it to be non-singular.

    Returns:
        tuple: (location row, BaseFrame at it).

    Raises:
        SingularPointError: If the point is singular.
    """
    if surface.model is not model:
        raise ValueError(f"Surface '{surface.name}' was not built on model '{model.name}'.")
    loc = surface.locate(p)
    frame = surface.frame(loc)
    if frame.singular[0]:
        raise SingularPointError(
            f"Point {p.coords} is singular on surface '{surface.name}' "
            f"(measure {float(frame.measure[0]):.3g} < {surface.singular_eps:g})."
        )
    return loc, frame


def tangential_derivative(
    model: ModelGeometry,
    surface: SurfacePatch,
    p: ChartPoint,
    direction: Direction,
    field: SurfaceField,
    level: int = 0,
) -> float:
    """
    Derivative of a surface field along e1 or V at a point.

    ``field`` is evaluated on stacked surface locations; nesting this function (for
    instance ``e1(e1(f))``) works by passing a field that itself calls
    ``derivative_values`` with ``level + 1``.

    Args:
        model (ModelGeometry): The ambient manifold.
        surface (SurfacePatch): The surface.
        p (ChartPoint): A non-singular point of the surface.
        direction (Direction): E1 or V.
        field (Callable): Vectorized scalar field of surface locations.
        level (int): Number of derivatives nested inside ``field``.

    Returns:
        float: The derivative.

    Raises:
        SingularPointError: If p is singular.
        NotOnSurfaceError: If p is not on the surface.
        CRGeometryError: If the direction fails the tangency check.
    """
    loc, frame = regular_location(model, surface, p)
    direction = Direction(direction)
    check_tangent(surface, loc, direction_vectors(surface, loc, direction, frame))
    return float(derivative_values(surface, field, loc, direction, level, frame)[0])
