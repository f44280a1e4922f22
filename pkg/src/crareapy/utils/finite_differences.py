# src/crareapy/utils/finite_differences.py

from typing import Callable

import numpy as np

# offsets and weights of the 4th-order centered first-derivative stencil
STENCIL_OFFSETS = np.array([-2.0, -1.0, 1.0, 2.0])
STENCIL_WEIGHTS = np.array([1.0, -8.0, 8.0, -1.0]) / 12.0


def chart_step(points: np.ndarray, relative: float = 1e-5) -> np.ndarray:
    """
    Step size ``max(relative, relative * |coord|)`` per point.

    Args:
        points (np.ndarray): Chart points of shape (N, 3).
        relative (float): Relative step. Default is 1e-5.

    Returns:
        np.ndarray: Steps of shape (N,).
    """
    scale = np.max(np.abs(points), axis=-1)
    return np.maximum(relative, relative * scale)


def five_point(values: np.ndarray, h) -> np.ndarray:
    """
    Combine samples taken at offsets (-2h, -h, h, 2h) into a first derivative.

    Args:
        values (np.ndarray): Array of shape (4, N, ...) ordered like ``STENCIL_OFFSETS``.
        h (float or np.ndarray): Step, scalar or broadcastable to ``values[0]``.

    Returns:
        np.ndarray: Derivative estimate of shape ``values.shape[1:]``.
    """
    combined = np.tensordot(STENCIL_WEIGHTS, values, axes=(0, 0))
    return combined / h


def directional_derivative(
    func: Callable[[np.ndarray], np.ndarray],
    points: np.ndarray,
    direction: np.ndarray,
    h=None,
) -> np.ndarray:
    """
    Derivative of ``func`` along the straight chart line ``p + s * direction``.

    ``func`` maps an (M, 3) array of chart points to an (M,) or (M, k) array.

    Args:
        func (Callable): Vectorized field on chart points.
        points (np.ndarray): Base points of shape (N, 3).
        direction (np.ndarray): Chart vectors of shape (N, 3).
        h (float, optional): Step. Defaults to ``chart_step(points)``.

    Returns:
        np.ndarray: Derivative values, one row per base point.
    """
    points = np.asarray(points, dtype=float)
    direction = np.asarray(direction, dtype=float)
    n = points.shape[0]
    if h is None:
        h = chart_step(points)
    h = np.broadcast_to(np.asarray(h, dtype=float), (n,))
    shifted = np.concatenate(
        [points + (k * h)[:, None] * direction for k in STENCIL_OFFSETS]
    )
    values = np.asarray(func(shifted))
    values = values.reshape((4, n) + values.shape[1:])
    h_b = h.reshape((n,) + (1,) * (values.ndim - 2))
    return five_point(values, h_b)


def evaluate_in_chunks(
    func: Callable[[np.ndarray], np.ndarray], locations: np.ndarray, chunk: int = 4096
) -> np.ndarray:
    """
    Evaluate a vectorized function block by block to bound memory use.

    Args:
        func (Callable): Function of an (M, k) array returning (M, ...) values.
        locations (np.ndarray): Input rows.
        chunk (int): Rows per block. Default is 4096.

    Returns:
        np.ndarray: Concatenated results.
    """
    if len(locations) <= chunk:
        return np.asarray(func(locations))
    parts = [
        np.asarray(func(locations[i:i + chunk])) for i in range(0, len(locations), chunk)
    ]
    return np.concatenate(parts)
