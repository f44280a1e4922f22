"""
Model pseudohermitian 3-manifolds with closed-form frames, connection, torsion
and Webster curvature.
"""

from crareapy.models.base import ChartPoint, ModelGeometry, TangentVector
from crareapy.models.connection import covariant_derivative, structure_residuals
from crareapy.models.curves import (
    CircleCurve,
    EllipseCurve,
    GeneratingCurve,
    circle_curve,
    ellipse_curve,
)
from crareapy.models.disk_bundle import DiskBundle, make_disk_bundle
from crareapy.models.heisenberg import Heisenberg, make_heisenberg
from crareapy.models.model_loader import ModelLoader
from crareapy.models.rossi import RossiSphere, make_rossi_sphere
from crareapy.models.torus import CurveTorus, make_torus

__all__ = [
    "ChartPoint",
    "TangentVector",
    "ModelGeometry",
    "GeneratingCurve",
    "CircleCurve",
    "EllipseCurve",
    "circle_curve",
    "ellipse_curve",
    "DiskBundle",
    "make_disk_bundle",
    "Heisenberg",
    "make_heisenberg",
    "RossiSphere",
    "make_rossi_sphere",
    "CurveTorus",
    "make_torus",
    "covariant_derivative",
    "structure_residuals",
    "ModelLoader",
]
