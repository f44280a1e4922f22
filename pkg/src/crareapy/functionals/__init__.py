"""
The CR-invariant densities dA1 and dA2, their integrals E1 and E2, and the
conformal invariance check.
"""

from crareapy.functionals.conformal import ConformalFactor, conformal_check
from crareapy.functionals.densities import (
    DensityValue,
    Functional,
    dA2_decomposition,
    density_dA1,
    density_dA2,
)
from crareapy.functionals.quadrature import QuadratureResult, integrate, quadrature_order

__all__ = [
    "Functional",
    "DensityValue",
    "density_dA1",
    "density_dA2",
    "dA2_decomposition",
    "QuadratureResult",
    "integrate",
    "quadrature_order",
    "ConformalFactor",
    "conformal_check",
]
