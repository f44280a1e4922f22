# src/crareapy/models/disk_bundle.py

import numpy as np

from crareapy.models.base import ModelGeometry, as_points


class DiskBundle(ModelGeometry):
    """
    The disk bundle B1 x R with chart (x, y, t), x^2 + y^2 < 1.

    Contact form ``theta = dt + 4(x dy - y dx)/(1 - r^2)``, Levi-orthonormal frame
    ``X = ((1-r^2)/2) d/dx + 2y d/dt``, ``Y = ((1-r^2)/2) d/dy - 2x d/dt``, ``T = d/dt``.
    The torsion vanishes and the Webster curvature is constant, W = -1/2.
    """

    WEBSTER = -0.5

    def __init__(self) -> None:
        super().__init__("disk-bundle")

    def in_domain(self, points) -> np.ndarray:
        p = as_points(points)
        return np.all(np.isfinite(p), axis=1) & (p[:, 0] ** 2 + p[:, 1] ** 2 < 1.0)

    def sample_points(self, n: int, seed: int = 0) -> np.ndarray:
        rng = np.random.default_rng(seed)
        r = 0.9 * np.sqrt(rng.uniform(0.0, 1.0, n))
        phi = rng.uniform(0.0, 2.0 * np.pi, n)
        t = rng.uniform(-2.0, 2.0, n)
        return np.column_stack([r * np.cos(phi), r * np.sin(phi), t])

    def theta(self, points) -> np.ndarray:
        p = as_points(points)
        x, y = p[:, 0], p[:, 1]
        q = 1.0 - x ** 2 - y ** 2
        return np.column_stack([-4.0 * y / q, 4.0 * x / q, np.ones_like(x)])

    def frame(self, points):
        p = as_points(points)
        x, y = p[:, 0], p[:, 1]
        half = 0.5 * (1.0 - x ** 2 - y ** 2)
        zero = np.zeros_like(x)
        X = np.column_stack([half, zero, 2.0 * y])
        Y = np.column_stack([zero, half, -2.0 * x])
        T = np.column_stack([zero, zero, np.ones_like(x)])
        return X, Y, T

    def omega(self, points) -> np.ndarray:
        p = as_points(points)
        x, y = p[:, 0], p[:, 1]
        q = 1.0 - x ** 2 - y ** 2
        return np.column_stack([-2.0 * y / q, 2.0 * x / q, np.zeros_like(x)])

    def torsion(self, points) -> np.ndarray:
        return np.zeros(as_points(points).shape[0], dtype=complex)

    def webster(self, points) -> np.ndarray:
        return np.full(as_points(points).shape[0], self.WEBSTER)


def make_disk_bundle() -> DiskBundle:
    """Build the disk bundle geometry."""
    return DiskBundle()
