# src/crareapy/verify/scans.py

"""
Parameter scans: the E2 landscape of the Rossi tori, the zero of H_cr on ellipse tori
and positivity spot checks of E1.
"""

import logging
from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import bisect

from crareapy.errors import HypothesisViolatedError
from crareapy.functionals.densities import Functional
from crareapy.functionals.quadrature import integrate
from crareapy.models.curves import CircleCurve, ellipse_curve
from crareapy.models.model_loader import ModelLoader
from crareapy.models.rossi import RossiSphere
from crareapy.models.torus import CurveTorus
from crareapy.surfaces.families import rossi_sigma, torus_slice
from crareapy.surfaces.reference import (
    rossi_sigma_energy,
    rossi_unbounded_condition_i,
    rossi_unbounded_condition_ii,
    torus_slice_hcr,
)

logger = logging.getLogger(__name__)

CLIFFORD_ZERO = 4.0 - np.sqrt(15.0)
ELLIPSE_RATIO_BOUND = 3.0 / 8.0
NON_PROOF_LABEL = "NON-PROOF: numeric spot check of an impossibility statement"


def scan_rossi_E2(
    c_values: Sequence[float],
    t: float,
    grid: Tuple[int, int] = (24, 24),
    numeric: bool = True,
) -> pd.DataFrame:
    """
    E2 of the Rossi tori ``rho1 = c`` for a fixed Rossi parameter.

    Args:
        c_values (Sequence[float]): Torus radii inside (0, 1).
        t (float): Rossi parameter.
        grid (tuple): Quadrature grid of the numeric column.
        numeric (bool): Also integrate the numeric densities. Default is True.

    Returns:
        pd.DataFrame: Columns ``c``, ``E2_closed_form`` and, when numeric, ``E2`` and
        ``error_estimate``, sorted by c.
    """
    if not (rossi_unbounded_condition_i(t) or rossi_unbounded_condition_ii(t)):
        logger.warning("Rossi parameter t=%g satisfies neither unboundedness condition; scanning anyway.", t)
    model = ModelLoader.create(f"rossi:{float(t)!r}")
    rows = []
    for c in sorted(float(c) for c in c_values):
        row = {"c": c, "E2_closed_form": rossi_sigma_energy(c, t, "E2")}
        if numeric:
            result = integrate(model, rossi_sigma(model, c), Functional.E2, grid)
            row["E2"] = result.value
            row["error_estimate"] = result.error_estimate
        rows.append(row)
    logger.debug("scanned %d Rossi tori at t=%g", len(rows), t)
    return pd.DataFrame(rows)


def divergent_tails(scan: pd.DataFrame, column: str = "E2_closed_form", tail: int = 5) -> dict:
    """
    Monotonicity of the scan tails.

    Returns:
        dict: ``upper`` (last ``tail`` values strictly increasing and positive) and
        ``lower`` (first ``tail`` values strictly increasing in c and negative).
    """
    values = scan.sort_values("c")[column].to_numpy()
    if len(values) < 2 * tail:
        raise ValueError(f"A scan needs at least {2 * tail} samples to test its tails, got {len(values)}.")
    upper, lower = values[-tail:], values[:tail]
    return {
        "upper": bool(np.all(np.diff(upper) > 0) and upper[0] > 0),
        "lower": bool(np.all(np.diff(lower) > 0) and lower[-1] < 0),
    }


def ellipse_slice_hcr(a: float, b: float, t) -> np.ndarray:
    """H_cr of the slice through the ellipse point with parameter t."""
    k0, k1, k2, _ = ellipse_curve(a, b).curvature_at_parameter(t)
    return torus_slice_hcr(k0, k1, k2)


def ellipse_hcr_root(a: float, b: float, xtol: float = 1e-12) -> Tuple[float, float]:
    """
    Zero of ``t -> H_cr`` of the ellipse-torus slices on (0, pi/2).

    Args:
        a (float): Semi-axis along x.
        b (float): Semi-axis along y.
        xtol (float): Bisection tolerance on t.

    Returns:
        tuple: ``(t0, s0)`` with s0 the arclength of the ellipse up to t0.

    Raises:
        HypothesisViolatedError: If ``b^2 / a^2 >= 3/8``.
    """
    if not (b / a) ** 2 < ELLIPSE_RATIO_BOUND:
        raise HypothesisViolatedError(
            f"Hypothesis of lemma 6.2 violated: b^2/a^2 = {(b / a) ** 2:.6g} is not below 3/8."
        )
    curve = ellipse_curve(a, b)

    def hcr(t: float) -> float:
        return float(ellipse_slice_hcr(a, b, t)[0])

    start, end = hcr(0.0), hcr(0.5 * np.pi)
    if not (start > 0 > end):
        raise HypothesisViolatedError(f"H_cr does not change sign on (0, pi/2): {start:.6g}, {end:.6g}.")
    t0 = bisect(hcr, 0.0, 0.5 * np.pi, xtol=xtol)
    s0 = float(curve.arclength_of(t0)[0])
    logger.debug("ellipse %g,%g: H_cr root t0=%.15g s0=%.15g", a, b, t0, s0)
    return float(t0), s0


@dataclass
class SpotCheck:
    """E1 values of sampled family members, labelled as a non-proof."""

    model: str
    family: str
    table: pd.DataFrame = field(default_factory=pd.DataFrame)
    skipped: bool = False
    label: str = NON_PROOF_LABEL

    @property
    def minimum(self) -> float:
        return float(self.table["E1"].min()) if not self.table.empty else float("nan")


def spot_check_no_zero_E1(
    model_spec: str,
    surface_family: str,
    n_samples: int = 5,
    grid: Tuple[int, int] = (16, 16),
) -> SpotCheck:
    """
    Sample members of a family and integrate E1.

    Supported pairs are the Rossi tori ``rossi-sigma`` for ``t < 4 - sqrt(15)`` and the
    slices ``torus-slice`` of a circle torus; other pairs are skipped with a warning.
    """
    model = ModelLoader.create(model_spec)
    check = SpotCheck(model.name, surface_family)
    if surface_family == "rossi-sigma" and isinstance(model, RossiSphere):
        if not model.t < CLIFFORD_ZERO:
            logger.warning("Rossi parameter t=%g is not below 4 - sqrt(15); spot check skipped.", model.t)
            check.skipped = True
            return check
        members = np.linspace(0.3, 0.7, n_samples)
        build = rossi_sigma
    elif surface_family == "torus-slice" and isinstance(model, CurveTorus) and isinstance(model.curve, CircleCurve):
        members = np.linspace(0.0, model.curve.period, n_samples, endpoint=False)
        build = torus_slice
    else:
        logger.warning("No spot check for family '%s' in model '%s'; skipped.", surface_family, model.name)
        check.skipped = True
        return check

    rows = []
    for c in members:
        surface = build(model, float(c))
        rows.append({"surface": surface.name, "E1": integrate(model, surface, Functional.E1, grid).value})
    check.table = pd.DataFrame(rows)
    return check
