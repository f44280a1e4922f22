# src/crareapy/models/torus.py

import numpy as np

from crareapy.models.base import TWO_PI, ModelGeometry, as_points
from crareapy.models.curves import GeneratingCurve


class CurveTorus(ModelGeometry):
    """
    The torus CR manifold generated by a closed, positively curved plane curve.

    Chart (s, x, y) with s the arclength of the generating curve (period L) and x, y
    angles. With unit tangent ``(xi', eta')`` and curvature ``kappa``:

    - ``theta = eta' dx + xi' dy`` and Reeb field ``T = eta' d/dx + xi' d/dy``;
    - ``X = sqrt(2/kappa) d/ds`` and ``Y = sqrt(2/kappa) (xi' d/dx - eta' d/dy)``;
    - ``A11 = -i kappa / 2``;
    - ``W = kappa/2 - kappa''/(2 kappa^2) + kappa'^2/(2 kappa^3)``.
    """

    def __init__(self, curve: GeneratingCurve) -> None:
        curve.check_invariants()
        super().__init__(f"torus-{curve.name}", periods={0: curve.period, 1: TWO_PI, 2: TWO_PI})
        self.curve = curve

    def in_domain(self, points) -> np.ndarray:
        return np.all(np.isfinite(as_points(points)), axis=1)

    def sample_points(self, n: int, seed: int = 0) -> np.ndarray:
        rng = np.random.default_rng(seed)
        s = rng.uniform(0.0, self.curve.period, n)
        angles = rng.uniform(0.0, TWO_PI, (n, 2))
        return np.column_stack([s, angles])

    def _tangent(self, p: np.ndarray):
        tangent = self.curve.tangent(p[:, 0])
        return tangent[:, 0], tangent[:, 1]

    def theta(self, points) -> np.ndarray:
        p = as_points(points)
        xi1, eta1 = self._tangent(p)
        return np.column_stack([np.zeros_like(xi1), eta1, xi1])

    def frame(self, points):
        p = as_points(points)
        xi1, eta1 = self._tangent(p)
        scale = np.sqrt(2.0 / self.curve.curvature(p[:, 0]))
        zero = np.zeros_like(xi1)
        X = np.column_stack([scale, zero, zero])
        Y = np.column_stack([zero, scale * xi1, -scale * eta1])
        T = np.column_stack([zero, eta1, xi1])
        return X, Y, T

    def omega(self, points) -> np.ndarray:
        p = as_points(points)
        xi1, eta1 = self._tangent(p)
        k0, k1, _, _ = self.curve.curvature_derivatives(p[:, 0])
        ratio = k1 / (2.0 * k0)
        return np.column_stack([
            np.zeros_like(k0),
            ratio * xi1 - 0.5 * k0 * eta1,
            -ratio * eta1 - 0.5 * k0 * xi1,
        ])

    def torsion(self, points) -> np.ndarray:
        p = as_points(points)
        return -0.5j * self.curve.curvature(p[:, 0])

    def webster(self, points) -> np.ndarray:
        p = as_points(points)
        k0, k1, k2, _ = self.curve.curvature_derivatives(p[:, 0])
        return 0.5 * k0 - k2 / (2.0 * k0 ** 2) + k1 ** 2 / (2.0 * k0 ** 3)

    def webster_derivative(self, points) -> np.ndarray:
        """Arclength derivative W'(s)."""
        p = as_points(points)
        k0, k1, k2, k3 = self.curve.curvature_derivatives(p[:, 0])
        return (
            0.5 * k1
            - k3 / (2.0 * k0 ** 2)
            + 2.0 * k1 * k2 / k0 ** 3
            - 1.5 * k1 ** 3 / k0 ** 4
        )

    def density_extras(self, points) -> np.ndarray:
        """
        ``(1/6) W^{,1} + (2i/3) (A^{11})_{,1}`` along ``Z1 = (X - iY)/2``.

        With ``A^{11} = conj(A11) = i kappa/2`` and ``omega_1^1(Z1) = kappa'/sqrt(8 kappa^3)``
        both terms are real: ``(W'/6 - 2 kappa'/3) / sqrt(2 kappa)``.
        """
        p = as_points(points)
        k0, k1, _, _ = self.curve.curvature_derivatives(p[:, 0])
        value = (self.webster_derivative(p) / 6.0 - 2.0 * k1 / 3.0) / np.sqrt(2.0 * k0)
        return value.astype(complex)


def make_torus(curve: GeneratingCurve) -> CurveTorus:
    """
    Build the torus generated by ``curve``.

    Raises:
        ValueError: If the curve fails its invariants.
    """
    return CurveTorus(curve)
