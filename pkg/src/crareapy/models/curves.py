# src/crareapy/models/curves.py

import logging
from abc import ABC, abstractmethod
from typing import Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator
from scipy.special import ellipeinc

logger = logging.getLogger(__name__)

TABLE_PANELS = 4096


class GeneratingCurve(ABC):
    """
    Abstract base class for closed, positively curved plane curves parameterized by arclength.

    Subclasses provide the period, the position, the unit tangent and the curvature with its
    first three arclength derivatives. Every method is vectorized in ``s`` and accepts
    values outside ``[0, L)``.
    """

    name: str = "curve"

    @property
    @abstractmethod
    def period(self) -> float:
        """Total length L of the curve."""
        pass

    @abstractmethod
    def position(self, s) -> np.ndarray:
        """Points gamma(s), shape (N, 2)."""
        pass

    @abstractmethod
    def tangent(self, s) -> np.ndarray:
        """Unit tangents (xi', eta')(s), shape (N, 2)."""
        pass

    @abstractmethod
    def curvature_derivatives(self, s) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """
        Curvature and its arclength derivatives.

        Returns:
            tuple: (kappa, kappa', kappa'', kappa'''), each of shape (N,).
        """
        pass

    def curvature(self, s) -> np.ndarray:
        return self.curvature_derivatives(s)[0]

    def check_invariants(self, samples: int = 257) -> None:
        """
        Verify arclength parameterization, positive curvature and periodicity.

        Raises:
            ValueError: If any invariant fails on the samples.
        """
        s = np.linspace(0.0, self.period, samples)
        norm_error = float(np.max(np.abs(np.linalg.norm(self.tangent(s), axis=1) - 1.0)))
        if norm_error > 1e-10:
            raise ValueError(f"Curve '{self.name}' is not parameterized by arclength (error {norm_error:.3g}).")
        kappa = self.curvature(s)
        if np.any(kappa <= 0.0):
            raise ValueError(f"Curve '{self.name}' must have positive curvature.")
        ends = self.position(np.array([0.0, self.period]))
        k_ends = self.curvature(np.array([0.0, self.period]))
        if np.max(np.abs(ends[0] - ends[1])) > 1e-8 or abs(k_ends[0] - k_ends[1]) > 1e-8:
            raise ValueError(f"Curve '{self.name}' is not closed with period {self.period}.")


class CircleCurve(GeneratingCurve):
    """Circle of radius r, kappa = 1/r."""

    def __init__(self, r: float) -> None:
        if not r > 0:
            raise ValueError(f"Circle radius must be positive, got {r}.")
        self.r = float(r)
        self.name = f"circle:{self.r:g}"

    @property
    def period(self) -> float:
        return 2.0 * np.pi * self.r

    def position(self, s) -> np.ndarray:
        u = np.atleast_1d(np.asarray(s, dtype=float)) / self.r
        return self.r * np.column_stack([np.cos(u), np.sin(u)])

    def tangent(self, s) -> np.ndarray:
        u = np.atleast_1d(np.asarray(s, dtype=float)) / self.r
        return np.column_stack([-np.sin(u), np.cos(u)])

    def curvature_derivatives(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        zero = np.zeros_like(s)
        return np.full_like(s, 1.0 / self.r), zero, zero, zero


class EllipseCurve(GeneratingCurve):
    """
    Ellipse ``(a cos t, b sin t)`` reparameterized by arclength.

    The arclength ``s(t) = int_0^t sqrt(a^2 sin^2 + b^2 cos^2)`` is evaluated with
    incomplete elliptic integrals of the second kind. Its inverse starts from a monotone
    cubic table on ``TABLE_PANELS`` panels and is polished with Newton steps.
    """

    def __init__(self, a: float, b: float) -> None:
        if not (a > 0 and b > 0):
            raise ValueError(f"Ellipse axes must be positive, got a={a}, b={b}.")
        self.a = float(a)
        self.b = float(b)
        self.name = f"ellipse:{self.a:g},{self.b:g}"
        self._length = float(self.arclength_of(np.array([2.0 * np.pi]))[0])
        nodes = np.linspace(0.0, 2.0 * np.pi, TABLE_PANELS + 1)
        self._inverse = PchipInterpolator(self.arclength_of(nodes), nodes)
        logger.debug("ellipse %s: length %.15g", self.name, self._length)

    @property
    def period(self) -> float:
        return self._length

    def _speed_squared(self, t: np.ndarray) -> np.ndarray:
        return self.a ** 2 * np.sin(t) ** 2 + self.b ** 2 * np.cos(t) ** 2

    def arclength_of(self, t) -> np.ndarray:
        """Arclength s(t) measured from t = 0."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        if self.a <= self.b:
            return self.b * ellipeinc(t, 1.0 - (self.a / self.b) ** 2)
        m = 1.0 - (self.b / self.a) ** 2
        return self.a * (ellipeinc(np.pi / 2.0, m) - ellipeinc(np.pi / 2.0 - t, m))

    def parameter_of(self, s) -> np.ndarray:
        """Ellipse parameter t in [0, 2 pi) for arclength s (taken mod L)."""
        s = np.mod(np.atleast_1d(np.asarray(s, dtype=float)), self._length)
        t = self._inverse(s)
        for _ in range(3):
            t = t - (self.arclength_of(t) - s) / np.sqrt(self._speed_squared(t))
        return t

    def position(self, s) -> np.ndarray:
        t = self.parameter_of(s)
        return np.column_stack([self.a * np.cos(t), self.b * np.sin(t)])

    def tangent(self, s) -> np.ndarray:
        return self.tangent_at_parameter(self.parameter_of(s))

    def tangent_at_parameter(self, t) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        speed = np.sqrt(self._speed_squared(t))
        return np.column_stack([-self.a * np.sin(t), self.b * np.cos(t)]) / speed[:, None]

    def curvature_derivatives(self, s):
        return self.curvature_at_parameter(self.parameter_of(s))

    def curvature_at_parameter(self, t):
        """Curvature and its arclength derivatives as functions of the ellipse parameter."""
        t = np.atleast_1d(np.asarray(t, dtype=float))
        ab = self.a * self.b
        diff = self.a ** 2 - self.b ** 2
        q = self._speed_squared(t)
        q1 = diff * np.sin(2.0 * t)
        q2 = 2.0 * diff * np.cos(2.0 * t)
        q3 = -4.0 * diff * np.sin(2.0 * t)
        k0 = ab * q ** -1.5
        k1 = -1.5 * ab * q ** -3.0 * q1
        k2 = -1.5 * ab * (q ** -3.5 * q2 - 3.0 * q ** -4.5 * q1 ** 2)
        k3 = -1.5 * ab * (q ** -4.0 * q3 - 9.5 * q ** -5.0 * q1 * q2 + 13.5 * q ** -6.0 * q1 ** 3)
        return k0, k1, k2, k3


def circle_curve(r: float) -> CircleCurve:
    """
    Circle of radius r.

    Raises:
        ValueError: If r <= 0.
    """
    return CircleCurve(r)


def ellipse_curve(a: float, b: float) -> EllipseCurve:
    """
    Arclength-parameterized ellipse with semi-axes a, b.

    Raises:
        ValueError: If an axis is non-positive.
    """
    return EllipseCurve(a, b)
