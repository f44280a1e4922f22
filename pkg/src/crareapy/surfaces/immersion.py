# src/crareapy/surfaces/immersion.py

import logging
from typing import Callable, Optional, Tuple

import numpy as np

from crareapy.errors import NotOnSurfaceError
from crareapy.models.base import ChartPoint, ModelGeometry, dot
from crareapy.surfaces.base import (
    DEFAULT_SINGULAR_EPS,
    BaseFrame,
    Box,
    SurfacePatch,
    parameter_difference,
)

logger = logging.getLogger(__name__)

Parameterization = Callable[[np.ndarray], np.ndarray]
Jacobian = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]


class ImmersedSurface(SurfacePatch):
    """
    Surface given by an immersion ``F: (u, v) -> chart point`` of a parameter rectangle.

    Locations are parameter pairs, shape (N, 2). The Legendrian direction is the
    contact part of the tangent plane, ``theta(F_v) F_u - theta(F_u) F_v``, oriented so
    that ``(theta ^ e^1)(F_u, F_v) > 0``; e2 = J e1 and alpha solves
    ``T + alpha e2 in span(F_u, F_v)``.

    Args:
        model (ModelGeometry): Ambient manifold.
        parameterization (Callable): Vectorized map (N, 2) -> (N, 3).
        name (str): Spec of the surface.
        box (tuple): Parameter rectangle.
        periodic (tuple): Periodicity flags per parameter axis.
        jacobian (Callable, optional): Analytic (F_u, F_v); finite differences otherwise.
        singular_eps (float): Threshold on the normalized contact part of the tangent plane.
        inverse (Callable, optional): Map from chart points back to parameters.
        fd_step (float): Parameter step of the finite-difference Jacobian.
    """

    def __init__(
        self,
        model: ModelGeometry,
        parameterization: Parameterization,
        name: str,
        box: Box,
        periodic: Tuple[bool, bool] = (False, False),
        jacobian: Optional[Jacobian] = None,
        singular_eps: float = DEFAULT_SINGULAR_EPS,
        inverse: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        fd_step: float = 1e-3,
    ) -> None:
        super().__init__(model, name, box=box, periodic=periodic, singular_eps=singular_eps)
        self.parameterization = parameterization
        self.jacobian = jacobian
        self.inverse = inverse
        self.fd_step = float(fd_step)

    def chart_points(self, loc: np.ndarray) -> np.ndarray:
        return np.asarray(self.parameterization(np.asarray(loc, dtype=float)), dtype=float)

    def tangents(self, loc: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        loc = np.asarray(loc, dtype=float)
        if self.jacobian is not None:
            return self.jacobian(loc)
        return parameter_difference(self.parameterization, loc, self.fd_step)

    def grid_locations(self, params: np.ndarray) -> np.ndarray:
        return np.asarray(params, dtype=float)

    def parameter_jacobian(self, params: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return self.tangents(params)

    def parameters_of(self, loc: np.ndarray) -> Optional[np.ndarray]:
        return np.asarray(loc, dtype=float)

    def frame(self, loc: np.ndarray) -> BaseFrame:
        points = self.chart_points(loc)
        A, B = self.tangents(loc)
        X, Y, T = self.model.frame(points)
        theta = self.model.theta(points)
        w = dot(theta, B)[:, None] * A - dot(theta, A)[:, None] * B
        wh = self.model.frame_coefficients(points, w)[:, :2]
        norm_w = np.hypot(wh[:, 0], wh[:, 1])
        norm_a = np.linalg.norm(self.model.frame_coefficients(points, A), axis=1)
        norm_b = np.linalg.norm(self.model.frame_coefficients(points, B), axis=1)
        with np.errstate(divide="ignore", invalid="ignore"):
            measure = norm_w / (norm_a * norm_b)
            singular = ~(measure >= self.singular_eps)
            # (theta ^ e^1)(F_u, F_v) = -e^1(w), hence the flip
            c1 = -wh / norm_w[:, None]
            c1[singular] = np.nan
            e2 = -c1[:, 1:2] * X + c1[:, 0:1] * Y
            system = np.stack([-e2, A, B], axis=-1)
            system[singular] = np.eye(3)
            alpha = np.linalg.solve(system, T[..., None])[:, 0, 0]
        alpha[singular] = np.nan
        return BaseFrame(c1, alpha, singular, measure)

    def shift(self, loc: np.ndarray, displacement: np.ndarray) -> np.ndarray:
        loc = np.asarray(loc, dtype=float)
        A, B = self.tangents(loc)
        gram = np.stack([
            np.stack([dot(A, A), dot(A, B)], axis=-1),
            np.stack([dot(A, B), dot(B, B)], axis=-1),
        ], axis=-2)
        rhs = np.stack([dot(A, displacement), dot(B, displacement)], axis=-1)
        return loc + np.linalg.solve(gram, rhs[..., None])[..., 0]

    def tangency_defect(self, loc: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        loc = np.asarray(loc, dtype=float)
        A, B = self.tangents(loc)
        d = self.shift(loc, vectors) - loc
        residual = vectors - d[:, 0:1] * A - d[:, 1:2] * B
        return np.linalg.norm(residual, axis=1) / np.linalg.norm(vectors, axis=1)

    def _wrapped_gap(self, q: np.ndarray, target: np.ndarray) -> np.ndarray:
        gap = q - target
        for axis, period in self.model.periods.items():
            gap[:, axis] = (gap[:, axis] + 0.5 * period) % period - 0.5 * period
        return gap

    def locate(self, p: ChartPoint, tol: float = 1e-8) -> np.ndarray:
        target = self.model.check_points(p)
        if self.inverse is not None:
            loc = np.asarray(self.inverse(target), dtype=float).reshape(1, 2)
        else:
            loc = self._search(target)
        gap = float(np.max(np.abs(self._wrapped_gap(self.chart_points(loc), target))))
        if not gap < tol:
            raise NotOnSurfaceError(
                f"Point {p.coords if isinstance(p, ChartPoint) else tuple(target[0])} "
                f"is not on surface '{self.name}' (distance {gap:.3g})."
            )
        return loc

    def _search(self, target: np.ndarray, nodes: int = 64, iterations: int = 20) -> np.ndarray:
        (u0, u1), (v0, v1) = self.box
        uu, vv = np.meshgrid(np.linspace(u0, u1, nodes), np.linspace(v0, v1, nodes), indexing="ij")
        grid = np.column_stack([uu.ravel(), vv.ravel()])
        distances = np.linalg.norm(self._wrapped_gap(self.chart_points(grid), np.repeat(target, len(grid), 0)), axis=1)
        loc = grid[np.argmin(distances)][None, :]
        for _ in range(iterations):
            gap = self._wrapped_gap(self.chart_points(loc), target)
            A, B = self.tangents(loc)
            jac = np.stack([A[0], B[0]], axis=1)
            step, *_ = np.linalg.lstsq(jac, -gap[0], rcond=None)
            loc = loc + step[None, :]
            if np.max(np.abs(step)) < 1e-14:
                break
        logger.debug("located %s at parameters %s", target[0], loc[0])
        return loc

    def deformed(self, field: Callable[[np.ndarray], np.ndarray], t: float, name: str = None) -> "ImmersedSurface":
        """
        The immersion ``F + t * field(params)``.

        Args:
            field (Callable): Chart displacement per parameter node, shape (N, 3).
            t (float): Deformation time.
        """
        base = self.parameterization

        def moved(params: np.ndarray) -> np.ndarray:
            return base(params) + t * field(params)

        return ImmersedSurface(
            self.model,
            moved,
            name or f"{self.name}+{t:g}X",
            self.box,
            self.periodic,
            singular_eps=self.singular_eps,
            fd_step=self.fd_step,
        )
