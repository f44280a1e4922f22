# src/crareapy/models/connection.py

"""
Tanaka-Webster covariant derivatives and structure-equation diagnostics.

Vector fields are vectorized callables mapping an (N, 3) array of chart points to
an (N, 3) array of chart components.
"""

from typing import Callable, Dict

import numpy as np

from crareapy.models.base import ModelGeometry, TangentVector, as_points, dot
from crareapy.utils.finite_differences import directional_derivative

VectorField = Callable[[np.ndarray], np.ndarray]


def frame_derivatives(model: ModelGeometry, points, directions: np.ndarray) -> np.ndarray:
    """
    Chart derivatives of the frame fields along ``directions``.

    Returns:
        np.ndarray: Shape (N, 3, 3); ``[:, :, k]`` is the derivative of the k-th frame field.
    """
    return directional_derivative(model.frame_matrix, as_points(points), directions)


def covariant_derivative_field(
    model: ModelGeometry, points, directions: np.ndarray, field: VectorField
) -> np.ndarray:
    """
    Vectorized ``nabla_direction field``.

    The field is expanded in (X, Y, T), its coefficients are differentiated along
    ``directions`` and the rotation ``nabla X = omega Y``, ``nabla Y = -omega X`` is added.

    Returns:
        np.ndarray: Chart components, shape (N, 3).
    """
    points = model.check_points(points)
    directions = np.asarray(directions, dtype=float)

    def coefficients(q: np.ndarray) -> np.ndarray:
        return model.frame_coefficients(q, field(q))

    coeffs = coefficients(points)
    d_coeffs = directional_derivative(coefficients, points, directions)
    rotation = dot(model.omega(points), directions)
    d_coeffs[:, 0] -= rotation * coeffs[:, 1]
    d_coeffs[:, 1] += rotation * coeffs[:, 0]
    return model.frame_combination(points, d_coeffs)


def covariant_derivative(
    model: ModelGeometry, direction: TangentVector, field: VectorField
) -> TangentVector:
    """
    Covariant derivative of a vector field along a tangent vector.

    Args:
        model (ModelGeometry): The pseudohermitian manifold.
        direction (TangentVector): Direction at the base point.
        field (Callable): Vectorized vector field near the base point.

    Returns:
        TangentVector: ``nabla_direction field`` at the base point.

    Raises:
        ChartDomainError: If the base point lies outside the chart.
    """
    value = covariant_derivative_field(
        model, direction.base.as_array()[None, :], direction.as_array()[None, :], field
    )
    return TangentVector(direction.base, tuple(value[0]))


def frame_field(model: ModelGeometry, index: int) -> VectorField:
    """The frame field X (0), Y (1) or T (2) as a vectorized callable."""
    return lambda q: model.frame(q)[index]


def lie_bracket(model: ModelGeometry, points, first: VectorField, second: VectorField) -> np.ndarray:
    """Chart components of ``[first, second]`` by finite differences."""
    points = as_points(points)
    a, b = first(points), second(points)
    return directional_derivative(second, points, a) - directional_derivative(first, points, b)


def exterior_derivative(model: ModelGeometry, points, first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """
    ``d theta(first, second)`` with ``d theta_ij = d_i theta_j - d_j theta_i`` by finite differences.
    """
    points = as_points(points)
    n = points.shape[0]
    jacobian = np.empty((n, 3, 3))
    for i in range(3):
        axis = np.zeros((n, 3))
        axis[:, i] = 1.0
        jacobian[:, i, :] = directional_derivative(model.theta, points, axis)
    form = jacobian - np.transpose(jacobian, (0, 2, 1))
    return np.einsum("ni,nij,nj->n", first, form, second)


def structure_residuals(model: ModelGeometry, n: int = 100, seed: int = 0) -> Dict[str, float]:
    """
    Maximal violations of the structure equations at random chart points.

    Checks the coframe duality ``theta(X) = theta(Y) = 0``, ``theta(T) = 1``, the Levi
    normalization ``d theta(X, Y) = 2``, the Reeb condition ``d theta(T, .) = 0`` and
    ``[X, Y] = -2T - omega(X) X - omega(Y) Y``.

    Returns:
        dict: Map from check name to its maximal absolute violation.
    """
    points = model.sample_points(n, seed)
    X, Y, T = model.frame(points)
    theta = model.theta(points)
    omega = model.omega(points)
    bracket = lie_bracket(model, points, frame_field(model, 0), frame_field(model, 1))
    expected = -2.0 * T - dot(omega, X)[:, None] * X - dot(omega, Y)[:, None] * Y
    return {
        "duality": float(max(
            np.max(np.abs(dot(theta, X))),
            np.max(np.abs(dot(theta, Y))),
            np.max(np.abs(dot(theta, T) - 1.0)),
        )),
        "levi": float(np.max(np.abs(exterior_derivative(model, points, X, Y) - 2.0))),
        "reeb": float(max(
            np.max(np.abs(exterior_derivative(model, points, T, X))),
            np.max(np.abs(exterior_derivative(model, points, T, Y))),
        )),
        "bracket": float(np.max(np.abs(bracket - expected))),
    }
