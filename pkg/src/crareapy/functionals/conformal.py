# src/crareapy/functionals/conformal.py

"""
Change of contact form ``theta -> lambda^2 theta`` and the invariance of dA1 (and of
dA2 for constant lambda).
"""

from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import numpy as np

from crareapy.errors import InapplicableFormulaError
from crareapy.functionals.densities import Functional, dA2_values, first_order_fields, v_alpha_values
from crareapy.models.base import ChartPoint, ModelGeometry, dot
from crareapy.models.connection import frame_derivatives
from crareapy.surfaces.base import BaseFrame, SurfacePatch
from crareapy.surfaces.calculus import Direction, derivative_values, regular_location


@dataclass(frozen=True)
class ConformalFactor:
    """
    A positive function lambda on the chart with its chart gradient and Hessian.

    Attributes:
        name (str): Spec of the factor.
        value (Callable): (N, 3) -> (N,).
        gradient (Callable): (N, 3) -> (N, 3).
        hessian (Callable): (N, 3) -> (N, 3, 3).
    """

    name: str
    value: Callable[[np.ndarray], np.ndarray]
    gradient: Callable[[np.ndarray], np.ndarray]
    hessian: Callable[[np.ndarray], np.ndarray]

    def is_constant(self, points: np.ndarray, tol: float = 1e-14) -> bool:
        return bool(
            np.max(np.abs(self.gradient(points))) <= tol and np.max(np.abs(self.hessian(points))) <= tol
        )

    @classmethod
    def constant(cls, c: float) -> "ConformalFactor":
        return cls(
            f"constant:{c:g}",
            lambda p: np.full(len(p), float(c)),
            lambda p: np.zeros((len(p), 3)),
            lambda p: np.zeros((len(p), 3, 3)),
        )

    @classmethod
    def linear(cls, c0: float, cx: float, cy: float, ct: float) -> "ConformalFactor":
        """``lambda = c0 + cx x + cy y + ct t`` in chart coordinates."""
        slope = np.array([cx, cy, ct], dtype=float)
        return cls(
            f"linear:{c0:g},{cx:g},{cy:g},{ct:g}",
            lambda p: c0 + np.asarray(p) @ slope,
            lambda p: np.tile(slope, (len(p), 1)),
            lambda p: np.zeros((len(p), 3, 3)),
        )

    @classmethod
    def random(cls, seed: int, center=(0.0, 0.0, 0.0)) -> "ConformalFactor":
        """
        A smooth positive factor ``1 + b.q + 0.05 q^T Q q + 0.1 sin(k.q + phase)`` with
        ``q = p - center`` and random coefficients of moderate size.
        """
        rng = np.random.default_rng(seed)
        center = np.asarray(center, dtype=float)
        b = rng.uniform(-0.2, 0.2, 3)
        half = rng.uniform(-1.0, 1.0, (3, 3))
        Q = 0.5 * (half + half.T)
        k = rng.uniform(-1.5, 1.5, 3)
        phase = rng.uniform(0.0, 2.0 * np.pi)

        def value(p):
            q = np.asarray(p) - center
            return 1.0 + q @ b + 0.05 * np.einsum("ni,ij,nj->n", q, Q, q) + 0.1 * np.sin(q @ k + phase)

        def gradient(p):
            q = np.asarray(p) - center
            return b + 0.1 * q @ Q + 0.1 * np.cos(q @ k + phase)[:, None] * k

        def hessian(p):
            q = np.asarray(p) - center
            curvature = -0.1 * np.sin(q @ k + phase)[:, None, None] * np.outer(k, k)
            return 0.1 * Q + curvature

        return cls(f"random:{seed}", value, gradient, hessian)


def inverse_hessian_diagonal(model: ModelGeometry, factor: ConformalFactor, points: np.ndarray, e1: np.ndarray, e2: np.ndarray):
    """
    Second covariant derivatives ``(1/lambda)_{11}`` and ``(1/lambda)_{22}`` along e1, e2.

    With ``mu = 1/lambda`` and the frame (X, Y), ``Hess mu (E_a, E_b) = E_a(E_b mu) -
    (nabla_{E_a} E_b) mu``, where ``E_a(E_b mu) = E_a^T D^2 mu E_b + grad mu . D E_b[E_a]``.
    """
    lam = factor.value(points)
    grad = factor.gradient(points)
    grad_mu = -grad / lam[:, None] ** 2
    hess_mu = -factor.hessian(points) / lam[:, None, None] ** 2 + 2.0 * np.einsum("ni,nj->nij", grad, grad) / lam[:, None, None] ** 3
    X, Y, _ = model.frame(points)
    omega = model.omega(points)
    frame = (X, Y)
    derivative_along = [frame_derivatives(model, points, E) for E in frame]
    d_mu = [dot(grad_mu, E) for E in frame]
    hess = np.empty((len(points), 2, 2))
    for a, Ea in enumerate(frame):
        w = dot(omega, Ea)
        # nabla_{E_a} X = omega(E_a) Y and nabla_{E_a} Y = -omega(E_a) X
        connection = (w * d_mu[1], -w * d_mu[0])
        for b, Eb in enumerate(frame):
            second = np.einsum("ni,nij,nj->n", Ea, hess_mu, Eb)
            transport = dot(grad_mu, derivative_along[a][:, :, b])
            hess[:, a, b] = second + transport - connection[b]
    c1 = model.frame_coefficients(points, e1)[:, :2]
    c2 = model.frame_coefficients(points, e2)[:, :2]
    h11 = np.einsum("ni,nij,nj->n", c1, hess, c1)
    h22 = np.einsum("ni,nij,nj->n", c2, hess, c2)
    return h11, h22


def tilde_alpha_field(surface: SurfacePatch, factor: ConformalFactor):
    """Surface field ``alpha~ = alpha/lambda + e1(lambda)/lambda^2``."""

    def field(loc: np.ndarray) -> np.ndarray:
        q = surface.chart_points(loc)
        f = surface.frame(loc)
        e1, _, _ = surface.frame_vectors(loc, f)
        value = factor.value(q)
        return f.alpha / value + dot(factor.gradient(q), e1) / value ** 2

    return field


def transformed_fields(
    model: ModelGeometry,
    surface: SurfacePatch,
    factor: ConformalFactor,
    loc: np.ndarray,
    frame: BaseFrame,
    fields: Dict[str, np.ndarray],
) -> Dict[str, np.ndarray]:
    """
    First-order invariants of the surface for the contact form ``lambda^2 theta``.

    ``alpha~`` is differentiated along ``e1~ = e1/lambda`` as a field of its own; the
    other entries follow the transformation laws of H, Im A11 and W.
    """
    points = surface.chart_points(loc)
    lam = factor.value(points)
    e1, e2, _ = surface.frame_vectors(loc, frame)
    grad = factor.gradient(points)
    lam1, lam2 = dot(grad, e1), dot(grad, e2)
    alpha_t = tilde_alpha_field(surface, factor)
    h11, h22 = inverse_hessian_diagonal(model, factor, points, e1, e2)
    out = {
        "alpha": alpha_t(loc),
        "e1_alpha": derivative_values(surface, alpha_t, loc, Direction.E1, 0, frame) / lam,
        "H": fields["H"] / lam - 3.0 * lam2 / lam ** 2,
        "im_a": fields["im_a"] / lam ** 2 + 0.5 * ((lam2 ** 2 - lam1 ** 2) / lam ** 4 + (h22 - h11) / lam),
        "W": 2.0 * (h11 + h22) / lam - 4.0 * (lam1 ** 2 + lam2 ** 2) / lam ** 4 + fields["W"] / lam ** 2,
    }
    out["h10"] = out["e1_alpha"] + 0.5 * out["alpha"] ** 2 - out["im_a"] + 0.25 * out["W"]
    out["hcr"] = out["h10"] + out["H"] ** 2 / 6.0
    return out


def conformal_check(
    model: ModelGeometry,
    surface: SurfacePatch,
    factor: ConformalFactor,
    p: ChartPoint,
    which: Functional = Functional.E1,
) -> Tuple[float, float]:
    """
    Density 2-form before and after ``theta -> lambda^2 theta`` at a surface point.

    The transformed invariants follow the transformation table
    (``e1~ = e1/lambda``, ``alpha~ = alpha/lambda + e1(lambda)/lambda^2``,
    ``H~ = H/lambda - 3 e2(lambda)/lambda^2`` and the laws for ``Im A11`` and ``W``) and
    the 2-form ``theta ^ e^1`` scales by ``lambda^3``. For E2 (constant lambda only) the
    bracket is rebuilt from the transformed invariants, with ``V~ = V/lambda^2``,
    ``Re A11~ = Re A11/lambda^2`` and third-order extras scaled by ``lambda^-3``.

    Returns:
        tuple: (original, transformed) values of the density 2-form on the parameter basis.

    Raises:
        SingularPointError: If p is singular.
        ValueError: If lambda is not positive at p.
        InapplicableFormulaError: For E2 with non-constant lambda.
    """
    which = Functional(which)
    loc, frame = regular_location(model, surface, p)
    points = surface.chart_points(loc)
    lam = factor.value(points)
    if not np.all(lam > 0.0):
        raise ValueError(f"Conformal factor '{factor.name}' must be positive, got {float(lam[0]):.6g}.")
    if which is Functional.E2 and not factor.is_constant(points):
        raise InapplicableFormulaError("dA2 transformation is only available for constant conformal factors.")
    params = surface.parameters_of(loc)
    area = 1.0 if params is None else float(surface.area2form(params)[0])
    fields = first_order_fields(surface, loc, frame)
    tilde = transformed_fields(model, surface, factor, loc, frame, fields)

    if which is Functional.E1:
        original = np.abs(fields["hcr"]) ** 1.5 * area
        transformed = np.abs(tilde["hcr"]) ** 1.5 * lam ** 3 * area
        return float(original[0]), float(transformed[0])

    tilde["re_a"] = fields["re_a"] / lam ** 2
    tilde["extras"] = fields["extras"] / lam ** 3
    v_alpha_t = derivative_values(surface, tilde_alpha_field(surface, factor), loc, Direction.V, 0, frame) / lam ** 2
    original = dA2_values(fields, v_alpha_values(surface, loc, frame)) * area
    transformed = dA2_values(tilde, v_alpha_t) * lam ** 3 * area
    return float(original[0]), float(transformed[0])
