# src/crareapy/variational/first_variation.py

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from crareapy.errors import ChartDomainError, SingularPointError
from crareapy.functionals.densities import Functional
from crareapy.functionals.quadrature import excluded_mask, integrate
from crareapy.models.base import ModelGeometry
from crareapy.surfaces.base import Box, SurfacePatch
from crareapy.surfaces.immersion import ImmersedSurface
from crareapy.surfaces.level_set import LevelSetSurface

logger = logging.getLogger(__name__)

SUPPORT_CUTOFF = 1e-6
DEFAULT_VARIATION_GRID = (48, 48)
# decay rate of the compact profile; near its center it follows a Gaussian of
# standard deviation width / sqrt(2 sharpness)
COMPACT_SHARPNESS = 8.0
# quadrature nodes per bump width on periodic and on bounded axes
PERIODIC_NODES_PER_WIDTH = 3.0
COMPACT_NODES_PER_WIDTH = 7.0


def periodic_bump(x: np.ndarray, center: float, width: float, period: float) -> np.ndarray:
    """Von Mises profile ``exp(kappa (cos(phi - phi0) - 1))`` with ``kappa = 1 / width^2`` in angle units."""
    scale = 2.0 * np.pi / period
    kappa = 1.0 / (scale * width) ** 2
    return np.exp(kappa * (np.cos(scale * (x - center)) - 1.0))


def compact_bump(x: np.ndarray, center: float, width: float, sharpness: float = 1.0) -> np.ndarray:
    """Smooth bump ``exp(k (1 - 1 / (1 - s^2)))`` on ``|s| < 1``, ``s = (x - center) / width``, ``k = sharpness``."""
    s = (np.asarray(x, dtype=float) - center) / width
    inside = np.abs(s) < 1.0
    out = np.zeros_like(s)
    out[inside] = np.exp(sharpness * (1.0 - 1.0 / (1.0 - s[inside] ** 2)))
    return out


@dataclass(frozen=True)
class Deformation:
    """
    Normal deformation ``X = f e2 + g T`` with ``f, g`` multiples of one bump profile.

    The weights are rescaled so that ``max(sup|f|, sup|g|) = 1``.

    Attributes:
        center (tuple): Parameter coordinates of the bump center.
        width (float): Bump width in parameter units.
        f_weight (float): Weight of the e2 component.
        g_weight (float): Weight of the T component.
        step (float): Largest finite-difference time step; the half step is also used.
    """

    center: Tuple[float, float]
    width: float
    f_weight: float = 1.0
    g_weight: float = 0.0
    step: float = 1e-3

    def __post_init__(self) -> None:
        if not self.width > 0:
            raise ValueError(f"Bump width must be positive, got {self.width}.")
        if not self.step > 0:
            raise ValueError(f"Deformation step must be positive, got {self.step}.")
        if self.f_weight == 0 and self.g_weight == 0:
            raise ValueError("Deformation needs a nonzero f or g component.")

    @classmethod
    def random(cls, seed: int, box: Box, width: Optional[float] = None, step: float = 1e-3) -> "Deformation":
        """A bump with random center and random (f, g) weights inside the middle of the box."""
        rng = np.random.default_rng(seed)
        (u0, u1), (v0, v1) = box
        if width is None:
            width = 0.2 * min(u1 - u0, v1 - v0)
        center = (
            float(rng.uniform(u0 + 0.3 * (u1 - u0), u1 - 0.3 * (u1 - u0))),
            float(rng.uniform(v0 + 0.3 * (v1 - v0), v1 - 0.3 * (v1 - v0))),
        )
        f_weight, g_weight = rng.uniform(-1.0, 1.0, size=2)
        return cls(center, float(width), float(f_weight), float(g_weight), step)

    def profile(self, params: np.ndarray, box: Box, periodic: Tuple[bool, bool]) -> np.ndarray:
        """Bump profile with sup-norm 1 at parameter nodes, shape (N,)."""
        params = np.asarray(params, dtype=float)
        out = np.ones(params.shape[0])
        for axis in range(2):
            low, high = box[axis]
            if periodic[axis]:
                out *= periodic_bump(params[:, axis], self.center[axis], self.width, high - low)
            else:
                out *= compact_bump(params[:, axis], self.center[axis], self.width, COMPACT_SHARPNESS)
        return out

    @property
    def weights(self) -> Tuple[float, float]:
        scale = max(abs(self.f_weight), abs(self.g_weight))
        return self.f_weight / scale, self.g_weight / scale


def as_immersion(surface: SurfacePatch) -> ImmersedSurface:
    """
    The immersion to deform: immersions as they are, level sets through their attached
    parameterization.
    """
    if isinstance(surface, ImmersedSurface):
        return surface
    if isinstance(surface, LevelSetSurface) and surface.has_parameterization:
        return surface.as_immersion()
    raise ValueError(
        f"Surface '{surface.name}' needs a parameterization; build one with LevelSetSurface.graph_over."
    )


def bump_grid(surface: SurfacePatch, width: float, minimum: Tuple[int, int] = (24, 24)) -> Tuple[int, int]:
    """Quadrature grid with enough nodes per bump width on every parameter axis."""
    immersion = as_immersion(surface)
    shape = []
    for axis in range(2):
        low, high = immersion.box[axis]
        if immersion.periodic[axis]:
            n = int(np.ceil(PERIODIC_NODES_PER_WIDTH * (high - low) / width))
        else:
            n = int(np.ceil(COMPACT_NODES_PER_WIDTH * (high - low) / width)) + 1
        shape.append(max(int(minimum[axis]), n))
    return tuple(shape)


def deformation_field(immersion: ImmersedSurface, d: Deformation):
    """Chart displacement ``f e2 + g T`` evaluated on the undeformed immersion."""
    f_weight, g_weight = d.weights

    def field(params: np.ndarray) -> np.ndarray:
        params = np.asarray(params, dtype=float)
        bump = d.profile(params, immersion.box, immersion.periodic)
        _, e2, _ = immersion.frame_vectors(params)
        _, _, T = immersion.model.frame(immersion.chart_points(params))
        e2 = np.nan_to_num(e2)
        return bump[:, None] * (f_weight * e2 + g_weight * T)

    return field


def _grid(immersion: ImmersedSurface, shape: Tuple[int, int]) -> np.ndarray:
    axes = [np.linspace(*immersion.box[i], shape[i], endpoint=not immersion.periodic[i]) for i in range(2)]
    uu, vv = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([uu.ravel(), vv.ravel()])


def check_support(immersion: ImmersedSurface, d: Deformation, shape: Tuple[int, int]) -> None:
    """
    Raises:
        SingularPointError: If the bump support touches a singular node or its neighbours.
    """
    params = _grid(immersion, shape)
    singular = immersion.frame(params).singular.reshape(shape)
    near = excluded_mask(excluded_mask(singular, immersion.periodic), immersion.periodic).ravel()
    support = d.profile(params, immersion.box, immersion.periodic) > SUPPORT_CUTOFF
    if np.any(near & support):
        raise SingularPointError(
            f"Deformation centered at {d.center} touches the singular set of '{immersion.name}'."
        )


def check_chart(immersion: ImmersedSurface, field, t: float, shape: Tuple[int, int]) -> None:
    """
    Raises:
        ChartDomainError: If the deformed surface leaves the chart.
    """
    params = _grid(immersion, shape)
    moved = immersion.chart_points(params) + t * field(params)
    inside = immersion.model.in_domain(moved)
    if not np.all(inside):
        raise ChartDomainError(
            f"Deformation of '{immersion.name}' by t={t:g} leaves the chart of model '{immersion.model.name}'."
        )


def first_variation(
    model: ModelGeometry,
    surface: SurfacePatch,
    which: Functional,
    d: Deformation,
    grid: Tuple[int, int] = DEFAULT_VARIATION_GRID,
) -> float:
    """
    Numeric derivative ``d/dt E(F_t(Sigma))`` at t = 0 for ``F_t = F + t (f e2 + g T)``.

    Central differences with steps ``d.step`` and ``d.step / 2`` are combined by
    Richardson extrapolation; each energy is a single-level quadrature on ``grid``.

    Args:
        model (ModelGeometry): Ambient manifold.
        surface (SurfacePatch): Immersion or parameterized level set.
        which (Functional): E1 or E2.
        d (Deformation): The deformation.
        grid (tuple): Quadrature nodes per axis.

    Returns:
        float: The first variation.

    Raises:
        SingularPointError: If the deformation touches singular points.
        ChartDomainError: If a deformed surface leaves the chart.
    """
    if surface.model is not model:
        raise ValueError(f"Surface '{surface.name}' was not built on model '{model.name}'.")
    which = Functional(which)
    immersion = as_immersion(surface)
    field = deformation_field(immersion, d)
    check_support(immersion, d, grid)
    for t in (d.step, -d.step):
        check_chart(immersion, field, t, grid)

    def energy(t: float) -> float:
        moved = immersion.deformed(field, t)
        return integrate(model, moved, which, grid, refine=False).value

    def central(delta: float) -> float:
        return (energy(delta) - energy(-delta)) / (2.0 * delta)

    coarse = central(d.step)
    fine = central(0.5 * d.step)
    value = (4.0 * fine - coarse) / 3.0
    logger.debug("first variation of %s on %s: D(h)=%.12g D(h/2)=%.12g -> %.12g", which.value, surface.name, coarse, fine, value)
    return float(value)
