"""
Euler-Lagrange residuals of E1 and E2 and numeric first variations under normal
deformations of a surface.
"""

from crareapy.variational.first_variation import Deformation, first_variation
from crareapy.variational.residuals import (
    ELIntermediates,
    el1_cyz,
    el1_general,
    el2_constant,
    el2_cyz,
    el_intermediates,
)

__all__ = [
    "ELIntermediates",
    "el_intermediates",
    "el1_general",
    "el1_cyz",
    "el2_constant",
    "el2_cyz",
    "Deformation",
    "first_variation",
]
