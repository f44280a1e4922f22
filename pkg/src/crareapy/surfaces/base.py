# src/crareapy/surfaces/base.py

from abc import ABC, abstractmethod
from typing import NamedTuple, Optional, Tuple

import numpy as np

from crareapy.models.base import ChartPoint, ModelGeometry, dot
from crareapy.utils.finite_differences import STENCIL_OFFSETS, five_point

DEFAULT_SINGULAR_EPS = 1e-6

Box = Tuple[Tuple[float, float], Tuple[float, float]]


class BaseFrame(NamedTuple):
    """
    Zeroth-order adapted data at surface locations.

    Attributes:
        c1 (np.ndarray): Coefficients of e1 in (X, Y), shape (N, 2). NaN at singular nodes.
        alpha (np.ndarray): Derivation function, shape (N,). NaN at singular nodes.
        singular (np.ndarray): Boolean singular flags, shape (N,).
        measure (np.ndarray): Non-singularity measure compared against the threshold.
    """

    c1: np.ndarray
    alpha: np.ndarray
    singular: np.ndarray
    measure: np.ndarray


class SurfacePatch(ABC):
    """
    Abstract base class for surfaces inside a model 3-manifold.

    Surface operators work on *locations*: arrays whose rows identify surface points in
    the representation's own coordinates (chart points for level sets, parameters for
    immersions). Surfaces that carry a parameterization over a rectangle also expose a
    parameter grid for quadrature.

    Attributes:
        model (ModelGeometry): Ambient manifold.
        name (str): Family spec of the surface.
        box (tuple): Parameter rectangle ((u0, u1), (v0, v1)), or None.
        periodic (tuple): Periodicity flags per parameter axis.
        singular_eps (float): Singular-point threshold.
    """

    def __init__(
        self,
        model: ModelGeometry,
        name: str,
        box: Optional[Box] = None,
        periodic: Tuple[bool, bool] = (False, False),
        singular_eps: float = DEFAULT_SINGULAR_EPS,
    ) -> None:
        if not singular_eps > 0:
            raise ValueError(f"Singular threshold must be positive, got {singular_eps}.")
        self.model = model
        self.name = name
        self.box = box
        self.periodic = tuple(bool(p) for p in periodic)
        self.singular_eps = float(singular_eps)

    @abstractmethod
    def chart_points(self, loc: np.ndarray) -> np.ndarray:
        """Chart points of the locations, shape (N, 3)."""
        pass

    @abstractmethod
    def frame(self, loc: np.ndarray) -> BaseFrame:
        """Adapted frame coefficients, derivation function and singular flags."""
        pass

    @abstractmethod
    def shift(self, loc: np.ndarray, displacement: np.ndarray) -> np.ndarray:
        """
        Move along a tangent chart displacement and return to the surface.

        For a fixed tangent vector ``v`` the map ``s -> shift(loc, s v)`` is a smooth
        surface curve with initial velocity ``v``.
        """
        pass

    @abstractmethod
    def locate(self, p: ChartPoint) -> np.ndarray:
        """
        Location (one row) of a chart point.

        Raises:
            NotOnSurfaceError: If the point is not on the surface.
            ChartDomainError: If the point lies outside the chart.
        """
        pass

    @abstractmethod
    def grid_locations(self, params: np.ndarray) -> np.ndarray:
        """Locations of parameter-rectangle nodes, shape (N, k)."""
        pass

    @abstractmethod
    def parameter_jacobian(self, params: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Chart components of (F_u, F_v) at parameter nodes."""
        pass

    @abstractmethod
    def tangency_defect(self, loc: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        """Relative distance of chart vectors from the tangent plane, shape (N,)."""
        pass

    def parameters_of(self, loc: np.ndarray) -> Optional[np.ndarray]:
        """Parameters of the locations, or None when the surface has no inverse parameterization."""
        return None

    def sample_parameters(self, shape: Tuple[int, int], inset: float = 0.02) -> np.ndarray:
        """
        Nodes of a parameter grid, shape (N, 2).

        Periodic axes use cell midpoints; other axes keep ``inset`` of the range away from
        both ends so that stencils stay inside the chart.
        """
        if self.box is None:
            raise ValueError(f"Surface '{self.name}' has no parameter rectangle.")
        axes = []
        for axis in range(2):
            low, high = self.box[axis]
            n = int(shape[axis])
            if self.periodic[axis]:
                axes.append(low + (np.arange(n) + 0.5) * (high - low) / n)
            else:
                margin = inset * (high - low)
                axes.append(np.linspace(low + margin, high - margin, n))
        uu, vv = np.meshgrid(*axes, indexing="ij")
        return np.column_stack([uu.ravel(), vv.ravel()])

    @property
    def has_parameterization(self) -> bool:
        return self.box is not None

    # frame vectors -----------------------------------------------------------

    def frame_vectors(self, loc: np.ndarray, frame: Optional[BaseFrame] = None):
        """
        Chart components of e1, e2 = J e1 and V = T + alpha e2.

        Returns:
            tuple: (e1, e2, V), each of shape (N, 3).
        """
        if frame is None:
            frame = self.frame(loc)
        X, Y, T = self.model.frame(self.chart_points(loc))
        cx, cy = frame.c1[:, 0:1], frame.c1[:, 1:2]
        e1 = cx * X + cy * Y
        e2 = -cy * X + cx * Y
        V = T + frame.alpha[:, None] * e2
        return e1, e2, V

    def area2form(self, params: np.ndarray) -> np.ndarray:
        """
        ``(theta ^ e^1)(F_u, F_v)`` at parameter nodes, with ``e^1`` the Levi dual of e1.
        """
        loc = self.grid_locations(params)
        points = self.chart_points(loc)
        frame = self.frame(loc)
        A, B = self.parameter_jacobian(params)
        theta = self.model.theta(points)
        hA = self.model.frame_coefficients(points, A)[:, :2]
        hB = self.model.frame_coefficients(points, B)[:, :2]
        e1A = np.einsum("ij,ij->i", frame.c1, hA)
        e1B = np.einsum("ij,ij->i", frame.c1, hB)
        return dot(theta, A) * e1B - dot(theta, B) * e1A

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r} in {self.model.name!r})"


def parameter_difference(
    func, params: np.ndarray, h: float = 1e-3
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Five-point derivatives of a parameterization along both parameter axes.

    Returns:
        tuple: (F_u, F_v), each of shape (N, 3).
    """
    params = np.asarray(params, dtype=float)
    n = params.shape[0]
    out = []
    for axis in range(2):
        step = np.zeros(2)
        step[axis] = h
        stacked = np.concatenate([params + k * step for k in STENCIL_OFFSETS])
        values = np.asarray(func(stacked)).reshape(4, n, -1)
        out.append(five_point(values, h))
    return out[0], out[1]
