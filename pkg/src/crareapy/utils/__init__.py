"""
Numerical helpers shared by the subpackages: finite-difference stencils,
convergence-order estimation and table rendering.
"""

from .finite_differences import (
    STENCIL_OFFSETS,
    chart_step,
    directional_derivative,
    evaluate_in_chunks,
    five_point,
)
from .convergence import observed_order
from .tables import format_table, write_csv

__all__ = [
    "STENCIL_OFFSETS",
    "chart_step",
    "directional_derivative",
    "evaluate_in_chunks",
    "five_point",
    "observed_order",
    "format_table",
    "write_csv",
]
