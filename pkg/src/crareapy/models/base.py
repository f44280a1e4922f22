# src/crareapy/models/base.py

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Tuple

import numpy as np

from crareapy.errors import ChartDomainError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ChartPoint:
    """A point given by its three chart coordinates."""

    coords: Tuple[float, float, float]

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)


@dataclass(frozen=True)
class TangentVector:
    """
    A tangent vector given by its components in the chart coordinate basis.

    Arithmetic is componentwise and only allowed between vectors sharing a base point.
    """

    base: ChartPoint
    components: Tuple[float, float, float]

    def as_array(self) -> np.ndarray:
        return np.array(self.components, dtype=float)

    def _check_base(self, other: "TangentVector") -> None:
        if not np.allclose(self.base.as_array(), other.base.as_array(), rtol=0.0, atol=1e-12):
            raise ValueError("Tangent vectors live at different base points.")

    def __add__(self, other: "TangentVector") -> "TangentVector":
        self._check_base(other)
        return TangentVector(self.base, tuple(self.as_array() + other.as_array()))

    def __sub__(self, other: "TangentVector") -> "TangentVector":
        self._check_base(other)
        return TangentVector(self.base, tuple(self.as_array() - other.as_array()))

    def __mul__(self, scalar: float) -> "TangentVector":
        return TangentVector(self.base, tuple(float(scalar) * self.as_array()))

    __rmul__ = __mul__

    def __neg__(self) -> "TangentVector":
        return self * -1.0


def as_points(points) -> np.ndarray:
    """
    Convert a ChartPoint, a coordinate triple or an array of triples to an (N, 3) array.
    """
    if isinstance(points, ChartPoint):
        return points.as_array()[None, :]
    arr = np.asarray(points, dtype=float)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.shape[-1] != 3:
        raise ValueError(f"Chart points need 3 coordinates, got shape {arr.shape}.")
    return arr


def dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Row-wise pairing of (N, 3) arrays (covector with vector, or chart dot product)."""
    return np.einsum("ij,ij->i", a, b)


class ModelGeometry(ABC):
    """
    Abstract base class for pseudohermitian 3-manifolds given on a single chart.

    Subclasses supply the contact form, the Levi-orthonormal frame (X, Y=JX, T),
    the real connection form ``omega`` (with ``nabla X = omega (x) Y`` and
    ``nabla Y = -omega (x) X``), the torsion ``A11`` and the Webster curvature ``W``.
    Every callback is vectorized: it takes an (N, 3) array of chart points (or a
    single ChartPoint) and returns one row per point. Instances are immutable.
    """

    def __init__(self, name: str, periods: Dict[int, float] = None) -> None:
        """
        Initialize a model.

        Args:
            name (str): Catalog name of the model (for instance "rossi:0.3").
            periods (dict, optional): Map from coordinate axis to its period.
        """
        self.name = name
        self.periods = dict(periods or {})

    # chart -----------------------------------------------------------------

    @abstractmethod
    def in_domain(self, points) -> np.ndarray:
        """
        Evaluate the chart-domain predicate.

        Args:
            points: Chart points.

        Returns:
            np.ndarray: Boolean array, one entry per point.
        """
        pass

    @abstractmethod
    def sample_points(self, n: int, seed: int = 0) -> np.ndarray:
        """
        Draw ``n`` reproducible random points from the working part of the chart.

        Returns:
            np.ndarray: Array of shape (n, 3).
        """
        pass

    def normalize(self, points) -> np.ndarray:
        """Wrap periodic coordinates into [0, period)."""
        arr = as_points(points).copy()
        for axis, period in self.periods.items():
            arr[:, axis] = np.mod(arr[:, axis], period)
        return arr

    def check_points(self, points) -> np.ndarray:
        """Return the points as an array, raising ChartDomainError if any lies outside the chart."""
        arr = as_points(points)
        inside = self.in_domain(arr)
        if not np.all(inside):
            bad = arr[~inside][0]
            raise ChartDomainError(
                f"Point {tuple(np.round(bad, 12))} lies outside the chart of model '{self.name}'."
            )
        return arr

    def point(self, *coords: float) -> ChartPoint:
        """
        Build a validated ChartPoint with angle coordinates normalized.

        Raises:
            ChartDomainError: If the point lies outside the chart domain.
        """
        if len(coords) == 1:
            coords = tuple(coords[0])
        arr = self.check_points(self.normalize(np.array(coords, dtype=float)))
        return ChartPoint(tuple(float(c) for c in arr[0]))

    # structure -------------------------------------------------------------

    @abstractmethod
    def theta(self, points) -> np.ndarray:
        """Components of the contact form in the chart coframe, shape (N, 3)."""
        pass

    @abstractmethod
    def frame(self, points) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Chart components of (X, Y, T), each of shape (N, 3)."""
        pass

    @abstractmethod
    def omega(self, points) -> np.ndarray:
        """Components of the real connection form in the chart coframe, shape (N, 3)."""
        pass

    @abstractmethod
    def torsion(self, points) -> np.ndarray:
        """Complex torsion A11, shape (N,)."""
        pass

    @abstractmethod
    def webster(self, points) -> np.ndarray:
        """Webster curvature W, shape (N,)."""
        pass

    def density_extras(self, points) -> np.ndarray:
        """
        The dA2 correction term (1/6) W^{,1} + (2i/3) (A^{11})_{,1}.

        Models with constant W and A return zero.
        """
        return np.zeros(as_points(points).shape[0], dtype=complex)

    # derived helpers ---------------------------------------------------------

    def frame_matrix(self, points) -> np.ndarray:
        """Stack the frame as columns: shape (N, 3, 3) with columns X, Y, T."""
        X, Y, T = self.frame(points)
        return np.stack([X, Y, T], axis=-1)

    def frame_coefficients(self, points, vectors: np.ndarray) -> np.ndarray:
        """
        Express chart vectors in the frame (X, Y, T).

        Since the frame is Levi-orthonormal, the coefficients are also the Levi
        inner products with X, Y and T.
        """
        matrix = self.frame_matrix(points)
        vectors = np.asarray(vectors, dtype=float)
        return np.linalg.solve(matrix, vectors[..., None])[..., 0]

    def frame_combination(self, points, coefficients: np.ndarray) -> np.ndarray:
        """Chart components of ``c_X X + c_Y Y (+ c_T T)``."""
        X, Y, T = self.frame(points)
        coefficients = np.asarray(coefficients, dtype=float)
        out = coefficients[:, 0:1] * X + coefficients[:, 1:2] * Y
        if coefficients.shape[1] > 2:
            out = out + coefficients[:, 2:3] * T
        return out

    def tangent_vector(self, p: ChartPoint, components) -> TangentVector:
        return TangentVector(p, tuple(float(c) for c in np.ravel(components)))

    def frame_at(self, p: ChartPoint) -> Tuple[TangentVector, TangentVector, TangentVector]:
        """The frame (X, Y, T) at a single point as TangentVectors."""
        X, Y, T = self.frame(self.check_points(p))
        return (
            self.tangent_vector(p, X[0]),
            self.tangent_vector(p, Y[0]),
            self.tangent_vector(p, T[0]),
        )

    def _spread(self, values: np.ndarray) -> float:
        return float(np.max(np.abs(values - values[0])))

    def has_constant_webster(self, n: int = 64, seed: int = 0, tol: float = 1e-10) -> bool:
        """Check by sampling whether W is constant."""
        return self._spread(self.webster(self.sample_points(n, seed))) <= tol

    def torsion_vanishes(self, n: int = 64, seed: int = 0, tol: float = 1e-10) -> bool:
        """Check by sampling whether A11 vanishes identically."""
        return float(np.max(np.abs(self.torsion(self.sample_points(n, seed))))) <= tol

    def has_constant_imaginary_torsion(self, n: int = 64, seed: int = 0, tol: float = 1e-10) -> bool:
        """Check by sampling whether A11 is a constant purely imaginary number."""
        values = self.torsion(self.sample_points(n, seed))
        return self._spread(values) <= tol and float(np.max(np.abs(values.real))) <= tol

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r})"


def raised_torsion(torsion: np.ndarray) -> np.ndarray:
    """
    Torsion with raised indices, A^{11} = A^1_{1bar} = conj(A11), in a unitary frame.
    """
    return np.conj(torsion)
