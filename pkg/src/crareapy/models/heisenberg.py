# src/crareapy/models/heisenberg.py

import numpy as np

from crareapy.models.base import ModelGeometry, as_points


class Heisenberg(ModelGeometry):
    """
    The Heisenberg group with ``theta = dt + x dy - y dx``.

    Flat model (W = 0, A11 = 0) used as a regression baseline.
    """

    def __init__(self) -> None:
        super().__init__("heisenberg")

    def in_domain(self, points) -> np.ndarray:
        return np.all(np.isfinite(as_points(points)), axis=1)

    def sample_points(self, n: int, seed: int = 0) -> np.ndarray:
        rng = np.random.default_rng(seed)
        return rng.uniform(-2.0, 2.0, (n, 3))

    def theta(self, points) -> np.ndarray:
        p = as_points(points)
        return np.column_stack([-p[:, 1], p[:, 0], np.ones(p.shape[0])])

    def frame(self, points):
        p = as_points(points)
        x, y = p[:, 0], p[:, 1]
        zero, one = np.zeros_like(x), np.ones_like(x)
        X = np.column_stack([one, zero, y])
        Y = np.column_stack([zero, one, -x])
        T = np.column_stack([zero, zero, one])
        return X, Y, T

    def omega(self, points) -> np.ndarray:
        return np.zeros((as_points(points).shape[0], 3))

    def torsion(self, points) -> np.ndarray:
        return np.zeros(as_points(points).shape[0], dtype=complex)

    def webster(self, points) -> np.ndarray:
        return np.zeros(as_points(points).shape[0])


def make_heisenberg() -> Heisenberg:
    return Heisenberg()
