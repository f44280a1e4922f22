# src/crareapy/surfaces/level_set.py

import logging
from typing import Callable, Optional, Sequence, Tuple

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
from crareapy.surfaces.immersion import ImmersedSurface, Jacobian, Parameterization
from crareapy.utils.finite_differences import directional_derivative

logger = logging.getLogger(__name__)

ScalarField = Callable[[np.ndarray], np.ndarray]

ON_SURFACE_TOL = 1e-10
NEWTON_STEPS = 4


class LevelSetSurface(SurfacePatch):
    """
    Surface ``{u = 0}`` of a defining function on the chart.

    Locations are chart points, shape (N, 3). The frame follows the sub-gradient:
    ``e2 = grad_b u / |grad_b u|``, ``e1 = -J e2`` and ``alpha = -T(u) / |grad_b u|``.
    A node is singular when ``|grad_b u| < singular_eps``.

    Args:
        model (ModelGeometry): Ambient manifold.
        function (Callable): Defining function, (N, 3) -> (N,).
        name (str): Spec of the surface.
        gradient (Callable, optional): Chart gradient (N, 3) -> (N, 3); finite differences otherwise.
        parameterization (Callable, optional): Parameterization of a patch, used for quadrature.
        box (tuple, optional): Parameter rectangle of the parameterization.
        periodic (tuple): Periodicity flags of the parameter axes.
        jacobian (Callable, optional): Analytic Jacobian of the parameterization.
        inverse (Callable, optional): Map from chart points to parameters.
        singular_eps (float): Singular-point threshold.
    """

    def __init__(
        self,
        model: ModelGeometry,
        function: ScalarField,
        name: str,
        gradient: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        parameterization: Optional[Parameterization] = None,
        box: Optional[Box] = None,
        periodic: Tuple[bool, bool] = (False, False),
        jacobian: Optional[Jacobian] = None,
        inverse: Optional[Callable[[np.ndarray], np.ndarray]] = None,
        singular_eps: float = DEFAULT_SINGULAR_EPS,
    ) -> None:
        if (parameterization is None) != (box is None):
            raise ValueError("A parameterization and its parameter box go together.")
        super().__init__(model, name, box=box, periodic=periodic, singular_eps=singular_eps)
        self.function = function
        self._gradient = gradient
        self.parameterization = parameterization
        self.jacobian = jacobian
        self.inverse = inverse

    def values(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(self.function(np.asarray(points, dtype=float)), dtype=float)

    def gradient(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=float)
        if self._gradient is not None:
            return np.asarray(self._gradient(points), dtype=float)
        columns = []
        for axis in range(3):
            direction = np.zeros_like(points)
            direction[:, axis] = 1.0
            columns.append(directional_derivative(self.values, points, direction))
        return np.column_stack(columns)

    def chart_points(self, loc: np.ndarray) -> np.ndarray:
        return np.asarray(loc, dtype=float)

    def frame(self, loc: np.ndarray) -> BaseFrame:
        points = self.chart_points(loc)
        g = self.gradient(points)
        X, Y, T = self.model.frame(points)
        xu, yu, tu = dot(g, X), dot(g, Y), dot(g, T)
        norm_b = np.hypot(xu, yu)
        singular = ~(norm_b >= self.singular_eps)
        with np.errstate(divide="ignore", invalid="ignore"):
            c2 = np.column_stack([xu, yu]) / norm_b[:, None]
            alpha = -tu / norm_b
        c1 = np.column_stack([c2[:, 1], -c2[:, 0]])
        c1[singular] = np.nan
        alpha[singular] = np.nan
        return BaseFrame(c1, alpha, singular, norm_b)

    def shift(self, loc: np.ndarray, displacement: np.ndarray) -> np.ndarray:
        points = np.asarray(loc, dtype=float)
        g = self.gradient(points)
        normal = g / np.linalg.norm(g, axis=1)[:, None]
        moved = points + displacement
        step = np.zeros(points.shape[0])
        with np.errstate(divide="ignore", invalid="ignore"):
            for _ in range(NEWTON_STEPS):
                q = moved + step[:, None] * normal
                step = step - self.values(q) / dot(self.gradient(q), normal)
        return moved + step[:, None] * normal

    def tangency_defect(self, loc: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        g = self.gradient(self.chart_points(loc))
        return np.abs(dot(g, vectors)) / (np.linalg.norm(g, axis=1) * np.linalg.norm(vectors, axis=1))

    def locate(self, p: ChartPoint, tol: float = ON_SURFACE_TOL) -> np.ndarray:
        points = self.model.check_points(p)
        residual = float(np.abs(self.values(points))[0])
        if not residual < tol:
            raise NotOnSurfaceError(
                f"Point {tuple(points[0])} is not on surface '{self.name}' (|u| = {residual:.3g})."
            )
        return points

    def grid_locations(self, params: np.ndarray) -> np.ndarray:
        if self.parameterization is None:
            raise ValueError(f"Surface '{self.name}' has no parameterization.")
        return np.asarray(self.parameterization(np.asarray(params, dtype=float)), dtype=float)

    def parameter_jacobian(self, params: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        if self.parameterization is None:
            raise ValueError(f"Surface '{self.name}' has no parameterization.")
        params = np.asarray(params, dtype=float)
        if self.jacobian is not None:
            return self.jacobian(params)
        return parameter_difference(self.parameterization, params)

    def parameters_of(self, loc: np.ndarray) -> Optional[np.ndarray]:
        if self.inverse is None:
            return None
        return np.asarray(self.inverse(np.asarray(loc, dtype=float)), dtype=float).reshape(-1, 2)

    def as_immersion(self) -> ImmersedSurface:
        """The attached parameterization as an immersed surface."""
        if self.parameterization is None:
            raise ValueError(f"Surface '{self.name}' has no parameterization; use graph_over.")
        return ImmersedSurface(
            self.model,
            self.parameterization,
            self.name,
            self.box,
            self.periodic,
            jacobian=self.jacobian,
            singular_eps=self.singular_eps,
            inverse=self.inverse,
        )

    def graph_over(
        self,
        anchor: Sequence[float],
        box: Box,
        axes: Optional[Tuple[int, int]] = None,
        periodic: Tuple[bool, bool] = (False, False),
    ) -> ImmersedSurface:
        """
        Local graph parameterization of the level set.

        The surface is written as a graph over two chart axes: the parameters set those
        coordinates and the third is solved from ``u = 0`` by Newton's method started at
        the anchor. By default the solved axis is the one along which the gradient at
        the anchor is largest, so the graph axes carry the largest tangent projection.

        Args:
            anchor (Sequence[float]): A chart point on the surface.
            box (tuple): Rectangle in the two graph coordinates.
            axes (tuple, optional): The two graph axes.
            periodic (tuple): Periodicity flags of the graph axes.

        Returns:
            ImmersedSurface: The graph immersion.
        """
        anchor = self.locate(ChartPoint(tuple(float(a) for a in anchor)))[0]
        if axes is None:
            solved = int(np.argmax(np.abs(self.gradient(anchor[None, :])[0])))
            axes = tuple(i for i in range(3) if i != solved)
        else:
            solved = ({0, 1, 2} - set(axes)).pop()
        logger.debug("graph of %s over axes %s, solving axis %d", self.name, axes, solved)

        def parameterization(params: np.ndarray) -> np.ndarray:
            params = np.asarray(params, dtype=float)
            points = np.repeat(anchor[None, :], params.shape[0], axis=0)
            points[:, axes[0]] = params[:, 0]
            points[:, axes[1]] = params[:, 1]
            for _ in range(2 * NEWTON_STEPS):
                slope = self.gradient(points)[:, solved]
                points[:, solved] -= self.values(points) / slope
            return points

        def inverse(points: np.ndarray) -> np.ndarray:
            return np.asarray(points)[:, list(axes)]

        return ImmersedSurface(
            self.model,
            parameterization,
            f"graph({self.name})",
            box,
            periodic,
            singular_eps=self.singular_eps,
            inverse=inverse,
        )
