# src/crareapy/functionals/quadrature.py

import logging
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from crareapy.errors import MostlySingularSurfaceError
from crareapy.functionals.densities import Functional, density_values
from crareapy.models.base import ModelGeometry
from crareapy.surfaces.base import SurfacePatch
from crareapy.utils.convergence import observed_order
from crareapy.utils.finite_differences import evaluate_in_chunks

logger = logging.getLogger(__name__)

MIN_NODES = 8
MAX_EXCLUDED_FRACTION = 0.5

DensityFunction = Callable[[SurfacePatch, np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureResult:
    """
    Integral of a density over a parameter rectangle.

    Attributes:
        value (float): Estimate on the refined grid.
        error_estimate (float): Absolute difference between the refined and the requested
            grid values. It bounds the error of the requested grid and is not scaled by the
            rule order, so it overstates the error of the refined value.
        excluded_fraction (float): Fraction of refined-grid nodes excluded as near-singular.
        nodes (int): Number of nodes of the refined grid.
    """

    value: float
    error_estimate: float
    excluded_fraction: float
    nodes: int

    def to_dict(self) -> dict:
        return asdict(self)


def axis_rule(bounds: Tuple[float, float], n: int, periodic: bool) -> Tuple[np.ndarray, np.ndarray]:
    """
    Nodes and weights along one axis.

    Periodic axes use the midpoint rule on ``n`` nodes; other axes use composite
    Simpson on an even number of panels (``n`` rounded up).
    """
    low, high = bounds
    if periodic:
        width = (high - low) / n
        return low + (np.arange(n) + 0.5) * width, np.full(n, width)
    panels = n + (n % 2)
    width = (high - low) / panels
    weights = np.full(panels + 1, 2.0)
    weights[1::2] = 4.0
    weights[0] = weights[-1] = 1.0
    return np.linspace(low, high, panels + 1), weights * width / 3.0


def excluded_mask(singular: np.ndarray, periodic: Tuple[bool, bool]) -> np.ndarray:
    """Singular nodes together with their grid neighbours (wrapping on periodic axes)."""
    mask = singular.copy()
    for axis, wrap in enumerate(periodic):
        for offset in (-1, 1):
            shifted = np.roll(singular, offset, axis=axis)
            if not wrap:
                edge = [slice(None), slice(None)]
                edge[axis] = 0 if offset == 1 else -1
                shifted[tuple(edge)] = False
            mask |= shifted
    return mask


def _grid_sum(surface: SurfacePatch, which: Functional, shape: Tuple[int, int], density: Optional[DensityFunction], chunk: int):
    (u_nodes, u_w), (v_nodes, v_w) = (
        axis_rule(surface.box[axis], shape[axis], surface.periodic[axis]) for axis in range(2)
    )
    uu, vv = np.meshgrid(u_nodes, v_nodes, indexing="ij")
    params = np.column_stack([uu.ravel(), vv.ravel()])
    weights = np.outer(u_w, v_w).ravel()

    def integrand(block: np.ndarray) -> np.ndarray:
        loc = surface.grid_locations(block)
        values = density(surface, loc) if density is not None else density_values(surface, loc, which)
        return np.column_stack([values, surface.area2form(block), surface.frame(loc).singular])

    table = evaluate_in_chunks(integrand, params, chunk)
    grid_shape = (len(u_nodes), len(v_nodes))
    singular = table[:, 2].astype(bool).reshape(grid_shape)
    excluded = excluded_mask(singular, surface.periodic).ravel()
    product = table[:, 0] * table[:, 1]
    excluded |= ~np.isfinite(product)
    total = float(np.sum(np.where(excluded, 0.0, weights * product)))
    return total, float(excluded.mean()), params.shape[0]


def integrate(
    model: ModelGeometry,
    surface: SurfacePatch,
    which: Functional,
    grid: Tuple[int, int] = (64, 64),
    density: Optional[DensityFunction] = None,
    chunk: int = 4096,
    refine: bool = True,
) -> QuadratureResult:
    """
    Integrate E1 or E2 over the parameter rectangle of a surface.

    The integral is computed on the requested grid and on the grid refined by 2 per
    axis; the refined value is returned with the unscaled |fine - coarse| as error estimate.
    Singular nodes and their grid neighbours are excluded.

    Args:
        model (ModelGeometry): Ambient manifold of the surface.
        surface (SurfacePatch): A surface with a parameterization.
        which (Functional): E1 or E2.
        grid (tuple): Nodes per axis, at least 8 each.
        density (Callable, optional): Replacement density ``(surface, loc) -> values``.
        chunk (int): Nodes evaluated per block.
        refine (bool): Also integrate on the refined grid. Without refinement the value
            comes from the requested grid and the error estimate is NaN.

    Returns:
        QuadratureResult: The integral with its error estimate.

    Raises:
        ValueError: If the grid is too coarse or the surface has no parameterization.
        MostlySingularSurfaceError: If more than half of the nodes are excluded.
    """
    if surface.model is not model:
        raise ValueError(f"Surface '{surface.name}' was not built on model '{model.name}'.")
    if not surface.has_parameterization:
        raise ValueError(f"Surface '{surface.name}' has no parameterization to integrate over.")
    n_u, n_v = (int(n) for n in grid)
    if min(n_u, n_v) < MIN_NODES:
        raise ValueError(f"Quadrature grid must have at least {MIN_NODES} nodes per axis, got {n_u}x{n_v}.")
    which = Functional(which)

    coarse, excluded, nodes = _grid_sum(surface, which, (n_u, n_v), density, chunk)
    if not refine:
        if excluded > MAX_EXCLUDED_FRACTION:
            raise MostlySingularSurfaceError(f"{excluded:.0%} of the nodes of '{surface.name}' are near-singular.")
        return QuadratureResult(coarse, float("nan"), excluded, nodes)
    fine, excluded, nodes = _grid_sum(surface, which, (2 * n_u, 2 * n_v), density, chunk)
    logger.debug(
        "%s over %s: coarse %.15g, fine %.15g, excluded %.3g", which.value, surface.name, coarse, fine, excluded
    )
    if excluded > MAX_EXCLUDED_FRACTION:
        raise MostlySingularSurfaceError(
            f"{excluded:.0%} of the nodes of '{surface.name}' are near-singular."
        )
    return QuadratureResult(fine, abs(fine - coarse), excluded, nodes)


def quadrature_order(
    model: ModelGeometry,
    surface: SurfacePatch,
    which: Functional,
    grids: Sequence[Tuple[int, int]] = ((8, 8), (16, 16), (32, 32)),
) -> dict:
    """
    Observed convergence order of the single-level quadrature under grid refinement.

    Args:
        grids (Sequence[tuple]): At least three increasingly fine grids.

    Returns:
        dict: ``order``, ``stderr``, ``table`` from ``observed_order`` and the ``values``.
    """
    values = [integrate(model, surface, which, grid, refine=False).value for grid in grids]
    study = observed_order([1.0 / grid[0] for grid in grids], values)
    study["values"] = values
    logger.debug("%s on %s: observed order %.3g", Functional(which).value, surface.name, study["order"])
    return study
