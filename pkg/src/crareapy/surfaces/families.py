# src/crareapy/surfaces/families.py

"""
Surface families of the model manifolds.

Each family is a level set with an attached parameterization whose parameter order
makes ``(theta ^ e^1)(F_u, F_v)`` positive for the level-set orientation
``e2 = grad_b u / |grad_b u|``.
"""

import numpy as np

from crareapy.errors import ChartDomainError
from crareapy.models.base import TWO_PI, ModelGeometry
from crareapy.models.disk_bundle import DiskBundle
from crareapy.models.heisenberg import Heisenberg
from crareapy.models.rossi import RossiSphere
from crareapy.models.torus import CurveTorus
from crareapy.surfaces.base import DEFAULT_SINGULAR_EPS
from crareapy.surfaces.level_set import LevelSetSurface

# collar kept away from the boundary circle of the disk
DISK_COLLAR = 1e-3
# radial window of the graphs over the punctured disk
GRAPH_RADII = (0.1, 0.9)
PERIOD = (0.0, TWO_PI)
UNIT = (0.0, 1.0)


def _require(model: ModelGeometry, kinds, family: str) -> None:
    if not isinstance(model, kinds):
        names = ", ".join(k.__name__ for k in (kinds if isinstance(kinds, tuple) else (kinds,)))
        raise ValueError(f"Surface family '{family}' needs a {names} model, got '{model.name}'.")


def plane(model: ModelGeometry, a: float, b: float, c: float, singular_eps: float = DEFAULT_SINGULAR_EPS) -> LevelSetSurface:
    """
    Vertical plane ``a x + b y = c``, parameterized by ``(sigma, tau)`` with
    ``(x, y) = foot + sigma (-b, a)/n`` and ``t = tau``.

    In the disk bundle the plane is clipped to the disk minus a collar and to ``t in [0, 1]``.
    """
    _require(model, (DiskBundle, Heisenberg), "plane")
    n = float(np.hypot(a, b))
    if n == 0.0:
        raise ValueError("Plane normal (a, b) must be nonzero.")
    foot = np.array([a, b]) * c / n ** 2
    along = np.array([-b, a]) / n
    if isinstance(model, DiskBundle):
        reach = (1.0 - DISK_COLLAR) ** 2 - (c / n) ** 2
        if reach <= 0.0:
            raise ChartDomainError(f"Plane {a:g}x + {b:g}y = {c:g} misses the disk.")
        half = float(np.sqrt(reach))
    else:
        half = 1.0

    def function(p):
        return a * p[:, 0] + b * p[:, 1] - c

    def gradient(p):
        return np.column_stack([np.full(len(p), a), np.full(len(p), b), np.zeros(len(p))])

    def parameterization(q):
        q = np.asarray(q, dtype=float)
        xy = foot[None, :] + q[:, 0:1] * along[None, :]
        return np.column_stack([xy, q[:, 1]])

    def jacobian(q):
        m = len(q)
        A = np.tile(np.array([along[0], along[1], 0.0]), (m, 1))
        B = np.tile(np.array([0.0, 0.0, 1.0]), (m, 1))
        return A, B

    def inverse(p):
        p = np.asarray(p, dtype=float)
        return np.column_stack([(p[:, :2] - foot[None, :]) @ along, p[:, 2]])

    return LevelSetSurface(
        model, function, f"plane:{a:g},{b:g},{c:g}", gradient=gradient,
        parameterization=parameterization, box=((-half, half), UNIT), periodic=(False, False),
        jacobian=jacobian, inverse=inverse, singular_eps=singular_eps,
    )


def cylinder(model: ModelGeometry, rho: float, singular_eps: float = DEFAULT_SINGULAR_EPS) -> LevelSetSurface:
    """Vertical cylinder ``x^2 + y^2 = rho^2`` over ``t in [0, 1]``, parameters (psi, t)."""
    _require(model, DiskBundle, "cylinder")
    if not 0.0 < rho < 1.0:
        raise ChartDomainError(f"Cylinder radius must lie in (0, 1), got {rho}.")

    def function(p):
        return p[:, 0] ** 2 + p[:, 1] ** 2 - rho ** 2

    def gradient(p):
        return np.column_stack([2.0 * p[:, 0], 2.0 * p[:, 1], np.zeros(len(p))])

    def parameterization(q):
        q = np.asarray(q, dtype=float)
        return np.column_stack([rho * np.cos(q[:, 0]), rho * np.sin(q[:, 0]), q[:, 1]])

    def jacobian(q):
        zero = np.zeros(len(q))
        A = np.column_stack([-rho * np.sin(q[:, 0]), rho * np.cos(q[:, 0]), zero])
        B = np.column_stack([zero, zero, np.ones(len(q))])
        return A, B

    def inverse(p):
        p = np.asarray(p, dtype=float)
        return np.column_stack([np.arctan2(p[:, 1], p[:, 0]), p[:, 2]])

    return LevelSetSurface(
        model, function, f"cylinder:{rho:g}", gradient=gradient,
        parameterization=parameterization, box=(PERIOD, UNIT), periodic=(True, False),
        jacobian=jacobian, inverse=inverse, singular_eps=singular_eps,
    )


def _radial_graph(model, name, height_sq, slope, radii, singular_eps):
    """
    Graph ``t^2 = f(ln(1 - r^2))`` (t > 0) with ``height_sq(r) = f`` and
    ``slope(r) = f'`` evaluated at ``ln(1 - r^2)``. Parameters (psi, r).
    """
    def function(p):
        r2 = p[:, 0] ** 2 + p[:, 1] ** 2
        return height_sq(np.sqrt(r2)) - p[:, 2] ** 2

    def gradient(p):
        r2 = p[:, 0] ** 2 + p[:, 1] ** 2
        factor = -2.0 * slope(np.sqrt(r2)) / (1.0 - r2)
        return np.column_stack([factor * p[:, 0], factor * p[:, 1], -2.0 * p[:, 2]])

    def parameterization(q):
        q = np.asarray(q, dtype=float)
        r = q[:, 1]
        return np.column_stack([r * np.cos(q[:, 0]), r * np.sin(q[:, 0]), np.sqrt(height_sq(r))])

    def jacobian(q):
        psi, r = q[:, 0], q[:, 1]
        t = np.sqrt(height_sq(r))
        dt_dr = -slope(r) * r / ((1.0 - r ** 2) * t)
        A = np.column_stack([-r * np.sin(psi), r * np.cos(psi), np.zeros(len(q))])
        B = np.column_stack([np.cos(psi), np.sin(psi), dt_dr])
        return A, B

    def inverse(p):
        p = np.asarray(p, dtype=float)
        return np.column_stack([np.arctan2(p[:, 1], p[:, 0]), np.hypot(p[:, 0], p[:, 1])])

    return LevelSetSurface(
        model, function, name, gradient=gradient,
        parameterization=parameterization, box=(PERIOD, radii), periodic=(True, False),
        jacobian=jacobian, inverse=inverse, singular_eps=singular_eps,
    )


def graph_t2(model: ModelGeometry, c: float, singular_eps: float = DEFAULT_SINGULAR_EPS) -> LevelSetSurface:
    """The surface ``t^2 = c`` (t > 0) over the annulus ``0.1 <= r <= 0.9``."""
    _require(model, DiskBundle, "graph-t2")
    if not c > 0.0:
        raise ValueError(f"graph-t2 needs c > 0, got {c}.")
    return _radial_graph(
        model, f"graph-t2:{c:g}",
        lambda r: np.full_like(r, c), lambda r: np.zeros_like(r),
        GRAPH_RADII, singular_eps,
    )


def log_graph(model: ModelGeometry, k: float, c: float, singular_eps: float = DEFAULT_SINGULAR_EPS) -> LevelSetSurface:
    """
    The surface ``t^2 = c + k ln(1 - r^2)`` (t > 0).

    Its derivation function is ``2t / (r sqrt(k^2 + 16 t^2))``.
    """
    _require(model, DiskBundle, "log-graph")
    low, high = GRAPH_RADII
    if k > 0.0:
        if not c > 0.0:
            raise ValueError(f"log-graph:{k:g},{c:g} has no points with t > 0.")
        high = min(high, 0.9 * float(np.sqrt(-np.expm1(-c / k))))
    height_at = c + k * np.log1p(-np.array([low, high]) ** 2)
    if high <= low or np.any(height_at <= 0.0):
        raise ValueError(f"log-graph:{k:g},{c:g} has no points with t > 0 on the radial window.")
    return _radial_graph(
        model, f"log-graph:{k:g},{c:g}",
        lambda r: c + k * np.log1p(-r ** 2), lambda r: np.full_like(r, k),
        (low, high), singular_eps,
    )


def rossi_sigma(model: ModelGeometry, c: float, singular_eps: float = DEFAULT_SINGULAR_EPS) -> LevelSetSurface:
    """The torus ``rho1 = c`` in the Rossi sphere, parameters (phi1, phi2)."""
    _require(model, RossiSphere, "rossi-sigma")
    if not model.margin < c < 1.0 - model.margin:
        raise ChartDomainError(f"rossi-sigma needs {model.margin:g} < c < {1 - model.margin:g}, got {c}.")

    def function(p):
        return p[:, 0] - c

    def gradient(p):
        return np.column_stack([np.ones(len(p)), np.zeros(len(p)), np.zeros(len(p))])

    def parameterization(q):
        q = np.asarray(q, dtype=float)
        return np.column_stack([np.full(len(q), c), q[:, 0], q[:, 1]])

    def jacobian(q):
        m = len(q)
        return (
            np.tile(np.array([0.0, 1.0, 0.0]), (m, 1)),
            np.tile(np.array([0.0, 0.0, 1.0]), (m, 1)),
        )

    def inverse(p):
        return np.asarray(p, dtype=float)[:, 1:3]

    return LevelSetSurface(
        model, function, f"rossi-sigma:{c:.10g}", gradient=gradient,
        parameterization=parameterization, box=(PERIOD, PERIOD), periodic=(True, True),
        jacobian=jacobian, inverse=inverse, singular_eps=singular_eps,
    )


def torus_slice(model: ModelGeometry, c: float, singular_eps: float = DEFAULT_SINGULAR_EPS) -> LevelSetSurface:
    """The torus ``s = c`` in a curve torus, parameters (y, x)."""
    _require(model, CurveTorus, "torus-slice")

    def function(p):
        return c - p[:, 0]

    def gradient(p):
        return np.column_stack([-np.ones(len(p)), np.zeros(len(p)), np.zeros(len(p))])

    def parameterization(q):
        q = np.asarray(q, dtype=float)
        return np.column_stack([np.full(len(q), c), q[:, 1], q[:, 0]])

    def jacobian(q):
        m = len(q)
        return (
            np.tile(np.array([0.0, 0.0, 1.0]), (m, 1)),
            np.tile(np.array([0.0, 1.0, 0.0]), (m, 1)),
        )

    def inverse(p):
        p = np.asarray(p, dtype=float)
        return np.column_stack([p[:, 2], p[:, 1]])

    return LevelSetSurface(
        model, function, f"torus-slice:{c:.10g}", gradient=gradient,
        parameterization=parameterization, box=(PERIOD, PERIOD), periodic=(True, True),
        jacobian=jacobian, inverse=inverse, singular_eps=singular_eps,
    )
