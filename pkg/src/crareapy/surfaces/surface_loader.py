# src/crareapy/surfaces/surface_loader.py

from typing import Callable, Dict, Tuple

import pandas as pd

from crareapy.models.base import ModelGeometry
from crareapy.models.model_loader import split_spec
from crareapy.surfaces.base import DEFAULT_SINGULAR_EPS, SurfacePatch
from crareapy.surfaces.families import cylinder, graph_t2, log_graph, plane, rossi_sigma, torus_slice

SURFACES: Dict[str, Tuple[int, Callable[..., SurfacePatch], str, str]] = {
    "plane": (3, plane, "plane:<a>,<b>,<c>", "vertical plane ax + by = c (disk bundle, Heisenberg)"),
    "cylinder": (1, cylinder, "cylinder:<rho>", "vertical cylinder r = rho (disk bundle)"),
    "graph-t2": (1, graph_t2, "graph-t2:<c>", "graph t^2 = c (disk bundle)"),
    "log-graph": (2, log_graph, "log-graph:<k>,<c>", "graph t^2 = c + k ln(1 - r^2) (disk bundle)"),
    "rossi-sigma": (1, rossi_sigma, "rossi-sigma:<c>", "torus rho1 = c (Rossi sphere)"),
    "torus-slice": (1, torus_slice, "torus-slice:<c>", "torus s = c (curve tori)"),
}


class SurfaceLoader:
    """
    Loader class to create surface families from spec strings.
    """

    @staticmethod
    def create(spec: str, model: ModelGeometry, singular_eps: float = DEFAULT_SINGULAR_EPS) -> SurfacePatch:
        """
        Create the surface named by ``spec`` inside ``model``.

        Args:
            spec (str): Family spec such as "plane:0,1,0.5" or "rossi-sigma:0.70710678".
            model (ModelGeometry): Ambient manifold.
            singular_eps (float): Singular-point threshold.

        Returns:
            SurfacePatch: The surface.

        Raises:
            ValueError: If the family is unknown, the arguments do not fit, or the model
                does not host the family.
        """
        name, args = split_spec(spec)
        if name not in SURFACES:
            raise ValueError(f"Surface family '{name}' is not supported.")
        arity, factory, pattern, _ = SURFACES[name]
        if len(args) != arity:
            raise ValueError(f"Surface family '{name}' expects the form '{pattern}'.")
        return factory(model, *args, singular_eps=singular_eps)

    @staticmethod
    def catalog() -> pd.DataFrame:
        """Table of the available surface specs."""
        return pd.DataFrame(
            [{"spec": pattern, "description": text} for _, _, pattern, text in SURFACES.values()]
        )
