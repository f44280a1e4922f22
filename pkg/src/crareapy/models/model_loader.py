# src/crareapy/models/model_loader.py

from typing import Callable, Dict, List, Tuple

import pandas as pd

from crareapy.models.base import ModelGeometry
from crareapy.models.curves import circle_curve, ellipse_curve
from crareapy.models.disk_bundle import make_disk_bundle
from crareapy.models.heisenberg import make_heisenberg
from crareapy.models.rossi import make_rossi_sphere
from crareapy.models.torus import make_torus


def split_spec(spec: str) -> Tuple[str, List[float]]:
    """
    Split ``"name:1,2.5"`` into ``("name", [1.0, 2.5])``.

    Raises:
        ValueError: If an argument is not a number.
    """
    name, _, args = spec.strip().partition(":")
    values = []
    for raw in filter(None, (a.strip() for a in args.split(","))):
        try:
            values.append(float(raw))
        except ValueError:
            raise ValueError(f"Argument '{raw}' of spec '{spec}' is not a number.") from None
    return name.lower(), values


MODELS: Dict[str, Tuple[int, Callable[..., ModelGeometry], str, str]] = {
    "disk-bundle": (0, make_disk_bundle, "disk-bundle", "B1 x R, W = -1/2, A11 = 0"),
    "heisenberg": (0, make_heisenberg, "heisenberg", "Heisenberg group, W = 0, A11 = 0"),
    "rossi": (1, make_rossi_sphere, "rossi:<t>", "Rossi sphere, |t| < 1"),
    "torus-circle": (1, lambda r: make_torus(circle_curve(r)), "torus-circle:<r>",
                     "torus over a circle of radius r"),
    "torus-ellipse": (2, lambda a, b: make_torus(ellipse_curve(a, b)), "torus-ellipse:<a>,<b>",
                      "torus over the ellipse with semi-axes a, b"),
}


class ModelLoader:
    """
    Loader class to create model geometries from catalog spec strings.
    """

    @staticmethod
    def create(spec: str) -> ModelGeometry:
        """
        Create the model named by ``spec``.

        Args:
            spec (str): Catalog spec such as "disk-bundle", "rossi:0.3" or "torus-ellipse:2,1".

        Returns:
            ModelGeometry: The constructed model.

        Raises:
            ValueError: If the name is unknown or the arguments do not fit.
        """
        name, args = split_spec(spec)
        if name not in MODELS:
            raise ValueError(f"Model '{name}' is not supported.")
        arity, factory, pattern, _ = MODELS[name]
        if len(args) != arity:
            raise ValueError(f"Model '{name}' expects the form '{pattern}'.")
        return factory(*args)

    @staticmethod
    def catalog() -> pd.DataFrame:
        """Table of the available model specs."""
        return pd.DataFrame(
            [{"spec": pattern, "description": text} for _, _, pattern, text in MODELS.values()]
        )
