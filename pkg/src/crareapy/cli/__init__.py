"""
Command-line interface: subcommands, run configuration and report emission.
"""

from crareapy.cli.config import RunConfig, load_config_file, parse_grid
from crareapy.cli.main import build_parser, main

__all__ = ["RunConfig", "load_config_file", "parse_grid", "build_parser", "main"]
