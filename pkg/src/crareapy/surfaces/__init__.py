"""
Surfaces in the model manifolds: level sets and immersions, the adapted Legendrian
frame, the derivation function, the p-mean curvature, H_cr and intrinsic tangential
derivatives.
"""

from crareapy.surfaces.base import BaseFrame, SurfacePatch
from crareapy.surfaces.calculus import Direction, tangential_derivative
from crareapy.surfaces.families import cylinder, graph_t2, log_graph, plane, rossi_sigma, torus_slice
from crareapy.surfaces.frame import (
    FramePointData,
    derivation_alpha,
    frame_point_data,
    h_cr,
    legendrian_frame,
    p_mean_curvature,
)
from crareapy.surfaces.immersion import ImmersedSurface
from crareapy.surfaces.level_set import LevelSetSurface
from crareapy.surfaces.surface_loader import SurfaceLoader

__all__ = [
    "BaseFrame",
    "SurfacePatch",
    "LevelSetSurface",
    "ImmersedSurface",
    "Direction",
    "tangential_derivative",
    "FramePointData",
    "legendrian_frame",
    "derivation_alpha",
    "p_mean_curvature",
    "h_cr",
    "frame_point_data",
    "plane",
    "cylinder",
    "graph_t2",
    "log_graph",
    "rossi_sigma",
    "torus_slice",
    "SurfaceLoader",
]
