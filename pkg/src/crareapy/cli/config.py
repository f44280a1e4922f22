# src/crareapy/cli/config.py

import json
import logging
import os
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple

from crareapy.functionals.quadrature import MIN_NODES

logger = logging.getLogger(__name__)

WORKERS_ENV = "CRAREAPY_WORKERS"


def parse_grid(text) -> Tuple[int, int]:
    """
    Parse ``"NxM"`` (or a single ``"N"``) into a pair of node counts.

    Raises:
        ValueError: If the text is not of that form.
    """
    if isinstance(text, (tuple, list)):
        return int(text[0]), int(text[1])
    parts = str(text).lower().replace("*", "x").split("x")
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ValueError(f"Grid '{text}' must have the form NxM.") from None
    if len(values) == 1:
        values = values * 2
    if len(values) != 2:
        raise ValueError(f"Grid '{text}' must have the form NxM.")
    return values[0], values[1]


@dataclass
class RunConfig:
    """
    Settings of one command-line run.

    Attributes:
        model (str): Model spec.
        surface (str): Surface family spec.
        grid (tuple): Nodes per parameter axis.
        tol_hcr (float): |H_cr| below which residuals are undefined.
        singular_eps (float): Singular-point threshold.
        fd_step (float): Time step of first-variation differences.
        out (str): Output path, or None.
        seed (int): Seed of randomized inputs.
        workers (int): Parallel jobs of the lemma runner.
    """

    model: Optional[str] = None
    surface: Optional[str] = None
    grid: Tuple[int, int] = (64, 64)
    tol_hcr: float = 1e-8
    singular_eps: float = 1e-6
    fd_step: float = 1e-3
    out: Optional[str] = None
    seed: int = 0
    workers: int = 1

    def validate(self) -> "RunConfig":
        """
        Raises:
            ValueError: On non-positive tolerances, a coarse grid or a bad worker count.
        """
        for name in ("tol_hcr", "singular_eps", "fd_step"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"Setting '{name}' must be positive, got {value}.")
        if min(self.grid) < MIN_NODES:
            raise ValueError(f"Grid must have at least {MIN_NODES} nodes per axis, got {self.grid[0]}x{self.grid[1]}.")
        if self.workers == 0 or self.workers < -1:
            raise ValueError(f"Worker count must be positive or -1, got {self.workers}.")
        return self

    def to_dict(self) -> dict:
        data = asdict(self)
        data["grid"] = f"{self.grid[0]}x{self.grid[1]}"
        return data

    @classmethod
    def from_sources(cls, file_values: Mapping[str, str], flags: Mapping[str, object]) -> "RunConfig":
        """
        Merge config-file values and command-line flags; flags win, then the file, then
        the environment for the worker count, then the defaults.
        """
        merged: Dict[str, object] = {}
        known = {f.name for f in fields(cls)}
        for key, value in file_values.items():
            if key not in known:
                raise ValueError(f"Config key '{key}' is not supported.")
            merged[key] = value
        if "workers" not in merged and os.environ.get(WORKERS_ENV):
            merged["workers"] = os.environ[WORKERS_ENV]
        for key, value in flags.items():
            if key in known and value is not None:
                merged[key] = value
        return cls(**{key: _coerce(key, value) for key, value in merged.items()}).validate()


def _coerce(key: str, value):
    if key == "grid":
        return parse_grid(value)
    if key in ("tol_hcr", "singular_eps", "fd_step"):
        return float(value)
    if key in ("seed", "workers"):
        return int(value)
    return None if value in ("", None) else str(value)


def _report_config(payload, path) -> Dict[str, str]:
    block = payload.get("config", payload) if isinstance(payload, dict) else None
    if not isinstance(block, dict):
        raise ValueError(f"{path}: a JSON config must be an object or a report with a 'config' block.")
    return {str(key).lower().replace("-", "_"): str(value) for key, value in block.items() if value is not None}


def load_config_file(path) -> Dict[str, str]:
    """
    Read a flat ``key = value`` file, or the ``config`` block of a JSON report.

    In key-value files blank lines and ``#`` comments are ignored; keys may use dashes or
    underscores. A file starting with ``{`` is read as JSON, so a report written with
    ``--out`` reproduces its run; null settings keep their defaults.

    Raises:
        ValueError: On a line without ``=`` or a JSON file without a config object.
    """
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            values = _report_config(json.loads(text), path)
        except json.JSONDecodeError as error:
            raise ValueError(f"{path}: invalid JSON config ({error.msg}).") from None
        logger.debug("loaded %d settings from the report %s", len(values), path)
        return values
    values: Dict[str, str] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"{path}:{number}: expected 'key = value', got '{raw.strip()}'.")
        values[key.strip().lower().replace("-", "_")] = value.strip()
    logger.debug("loaded %d settings from %s", len(values), path)
    return values
