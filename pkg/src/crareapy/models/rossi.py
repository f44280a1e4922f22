# src/crareapy/models/rossi.py

import numpy as np

from crareapy.models.base import TWO_PI, ModelGeometry, as_points

DEFAULT_CHART_MARGIN = 1e-3


class RossiSphere(ModelGeometry):
    """
    The Rossi sphere S^3_t: the unit sphere whose CR structure is spanned by
    ``(Z1 + t conj(Z1)) / sqrt(1 - t^2)``.

    Chart (rho1, phi1, phi2) with ``z1 = rho1 e^{i phi1}``, ``z2 = rho2 e^{i phi2}``,
    ``rho2 = sqrt(1 - rho1^2)``, valid for ``margin < rho1 < 1 - margin``.
    The contact form is ``rho1^2 dphi1 + rho2^2 dphi2`` and the Reeb field is
    ``d/dphi1 + d/dphi2``. W and A11 are constant:
    ``W = 2(1+t^2)/(1-t^2)`` and ``A11 = 4it/(1-t^2)``.

    Args:
        t (float): Deformation parameter, |t| < 1.
        margin (float): Chart collar around the circles rho1 = 0 and rho1 = 1.
    """

    def __init__(self, t: float, margin: float = DEFAULT_CHART_MARGIN) -> None:
        t = float(t)
        if not np.isfinite(t) or abs(t) >= 1.0:
            raise ValueError(f"Rossi parameter t must satisfy |t| < 1, got {t}.")
        if not 0.0 < margin < 0.5:
            raise ValueError(f"Chart margin must lie in (0, 0.5), got {margin}.")
        super().__init__(f"rossi:{t:g}", periods={1: TWO_PI, 2: TWO_PI})
        self.t = t
        self.margin = float(margin)
        # stretch factor of Re Z1(t) against Re Z1
        self.stretch = np.sqrt((1.0 + t) / (1.0 - t))

    @property
    def webster_value(self) -> float:
        return 2.0 * (1.0 + self.t ** 2) / (1.0 - self.t ** 2)

    @property
    def torsion_value(self) -> complex:
        return 4j * self.t / (1.0 - self.t ** 2)

    def in_domain(self, points) -> np.ndarray:
        p = as_points(points)
        rho1 = p[:, 0]
        return np.all(np.isfinite(p), axis=1) & (rho1 > self.margin) & (rho1 < 1.0 - self.margin)

    def sample_points(self, n: int, seed: int = 0) -> np.ndarray:
        rng = np.random.default_rng(seed)
        rho1 = rng.uniform(0.1, 0.9, n)
        angles = rng.uniform(0.0, TWO_PI, (n, 2))
        return np.column_stack([rho1, angles])

    def theta(self, points) -> np.ndarray:
        p = as_points(points)
        rho1 = p[:, 0]
        return np.column_stack([np.zeros_like(rho1), rho1 ** 2, 1.0 - rho1 ** 2])

    def frame(self, points):
        p = as_points(points)
        rho1 = p[:, 0]
        rho2 = np.sqrt(1.0 - rho1 ** 2)
        phase = p[:, 1] + p[:, 2]
        zero = np.zeros_like(rho1)
        radial = np.column_stack([rho2, zero, zero])
        angular = np.column_stack([zero, rho2 / rho1, -rho1 / rho2])
        c, s = np.cos(phase)[:, None], np.sin(phase)[:, None]
        X = self.stretch * (radial * c - angular * s)
        Y = (radial * s + angular * c) / self.stretch
        T = np.column_stack([zero, np.ones_like(rho1), np.ones_like(rho1)])
        return X, Y, T

    def omega(self, points) -> np.ndarray:
        return -self.webster_value * self.theta(points)

    def torsion(self, points) -> np.ndarray:
        return np.full(as_points(points).shape[0], self.torsion_value, dtype=complex)

    def webster(self, points) -> np.ndarray:
        return np.full(as_points(points).shape[0], self.webster_value)


def make_rossi_sphere(t: float, margin: float = DEFAULT_CHART_MARGIN) -> RossiSphere:
    """
    Build the Rossi sphere S^3_t.

    Raises:
        ValueError: If |t| >= 1.
    """
    return RossiSphere(t, margin=margin)
