# src/crareapy/cli/main.py

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from crareapy.cli.config import RunConfig, load_config_file, parse_grid
from crareapy.functionals.conformal import ConformalFactor, conformal_check
from crareapy.functionals.densities import Functional, density_dA1, density_dA2
from crareapy.functionals.quadrature import integrate
from crareapy.models.model_loader import ModelLoader, split_spec
from crareapy.surfaces.frame import hcr_values, mean_curvature_values
from crareapy.surfaces.surface_loader import SurfaceLoader
from crareapy.utils.finite_differences import evaluate_in_chunks
from crareapy.utils.tables import format_table, write_csv
from crareapy.variational.first_variation import Deformation, first_variation
from crareapy.variational.residuals import (
    el1_cyz_values,
    el1_general_values,
    el2_constant_values,
    el2_cyz_values,
    require_constant_torsion,
    require_cyz,
)
from crareapy.verify.report import summary_frame
from crareapy.verify.runner import all_match, verify_all
from crareapy.verify.scans import ellipse_hcr_root, scan_rossi_E2

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
CONFORMAL_TOLERANCE = 1e-4

RESIDUAL_COLUMNS = "u, v, H, alpha, H_cr, residual"
SCAN_COLUMNS = "c, E2_closed_form, E2, error_estimate"


# parsing helpers -----------------------------------------------------------------

def parse_floats(text: str, count: Optional[int] = None, what: str = "value") -> List[float]:
    try:
        values = [float(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(f"{what} '{text}' must be comma-separated numbers.") from None
    if count is not None and len(values) != count:
        raise ValueError(f"{what} '{text}' needs {count} numbers, got {len(values)}.")
    return values


def parse_range(text: str) -> np.ndarray:
    """``start:stop:count`` or a comma-separated list."""
    if ":" in text:
        start, stop, count = text.split(":")
        return np.linspace(float(start), float(stop), int(count))
    return np.array(parse_floats(text, what="Range"))


FACTORS: Dict[str, Callable[..., ConformalFactor]] = {
    "constant": ConformalFactor.constant,
    "linear": ConformalFactor.linear,
    "random": lambda seed: ConformalFactor.random(int(seed)),
}


def factor_from_spec(spec: str) -> ConformalFactor:
    name, args = split_spec(spec)
    if name not in FACTORS:
        raise ValueError(f"Conformal factor '{name}' is not supported.")
    return FACTORS[name](*args)


def emit(payload: dict, config: RunConfig) -> None:
    """Write the JSON report when an output path is configured."""
    if config.out is None:
        return
    Path(config.out).write_text(json.dumps(payload, indent=2, default=float))
    logger.info("wrote %s", config.out)


def _geometry(config: RunConfig):
    if config.model is None or config.surface is None:
        raise ValueError("Both --model and --surface are required.")
    model = ModelLoader.create(config.model)
    return model, SurfaceLoader.create(config.surface, model, config.singular_eps)


# subcommands -------------------------------------------------------------------------

def run_models(args: argparse.Namespace, config: RunConfig) -> int:
    models, surfaces = ModelLoader.catalog(), SurfaceLoader.catalog()
    print(format_table(models))
    print()
    print(format_table(surfaces))
    emit({"models": models.to_dict("records"), "surfaces": surfaces.to_dict("records")}, config)
    return EXIT_OK


def run_evaluate(args: argparse.Namespace, config: RunConfig) -> int:
    model, surface = _geometry(config)
    which = Functional(args.functional)
    if args.point is not None:
        p = model.point(*parse_floats(args.point, 3, "Point"))
        density = (density_dA1 if which is Functional.E1 else density_dA2)(model, surface, p)
        scalar = density.dA1_scalar if which is Functional.E1 else density.dA2_scalar
        result = {"point": list(p.coords), "density": scalar, "area2form": density.area2form}
    else:
        result = integrate(model, surface, which, config.grid).to_dict()
    print(format_table(pd.DataFrame([result])))
    emit({"command": "evaluate", "functional": which.value, "config": config.to_dict(), "result": result}, config)
    return EXIT_OK


def residual_function(model, which: Functional, form: str, tol_hcr: float):
    if which is Functional.E1:
        if form == "cyz":
            require_cyz(model)
            return lambda s, l: el1_cyz_values(s, l, tol_hcr)
        return lambda s, l: el1_general_values(s, l, tol_hcr)
    if form == "cyz":
        require_cyz(model)
        return el2_cyz_values
    require_constant_torsion(model)
    return el2_constant_values


def run_residual(args: argparse.Namespace, config: RunConfig) -> int:
    model, surface = _geometry(config)
    which = Functional(args.which)
    residual = residual_function(model, which, args.form, config.tol_hcr)
    params = surface.sample_parameters(config.grid, args.inset)

    def table(block: np.ndarray) -> np.ndarray:
        loc = surface.grid_locations(block)
        frame = surface.frame(loc)
        return np.column_stack([
            block,
            mean_curvature_values(surface, loc, frame),
            frame.alpha,
            hcr_values(surface, loc, frame),
            residual(surface, loc),
        ])

    nodes = pd.DataFrame(evaluate_in_chunks(table, params, 1024), columns=[c.strip() for c in RESIDUAL_COLUMNS.split(",")])
    summary = pd.DataFrame([{
        "nodes": len(nodes),
        "max|residual|": float(np.nanmax(np.abs(nodes["residual"]))) if nodes["residual"].notna().any() else float("nan"),
        "undefined": int(nodes["residual"].isna().sum()),
    }])
    print(format_table(summary))
    if config.out is not None:
        write_csv(nodes, config.out)
    return EXIT_OK


def run_variation(args: argparse.Namespace, config: RunConfig) -> int:
    model, surface = _geometry(config)
    u0, v0, width = parse_floats(args.bump, 3, "Bump")
    f_weight, g_weight = parse_floats(args.fields, 2, "Fields")
    d = Deformation((u0, v0), width, f_weight, g_weight, config.fd_step)
    which = Functional(args.functional)
    value = first_variation(model, surface, which, d, config.grid)
    result = {"functional": which.value, "first_variation": value, "bump": [u0, v0, width], "fields": [f_weight, g_weight]}
    print(format_table(pd.DataFrame([result])))
    emit({"command": "variation", "config": config.to_dict(), "result": result}, config)
    return EXIT_OK


def run_verify(args: argparse.Namespace, config: RunConfig) -> int:
    if not args.all and not args.lemma:
        raise ValueError("verify needs --all or --lemma <id>.")
    ids = None if args.all else args.lemma
    grid = config.grid if args.grid_given else None
    reports = verify_all(ids, grid, config.seed, config.workers)
    for report in reports:
        logger.info("\n%s", report.display())
    print(format_table(summary_frame(reports)))
    emit({"command": "verify", "config": config.to_dict(), "reports": [r.to_dict() for r in reports]}, config)
    return EXIT_OK if all_match(reports) else EXIT_CHECK_FAILED


def run_scan(args: argparse.Namespace, config: RunConfig) -> int:
    if args.ellipse_root is not None:
        a, b = parse_floats(args.ellipse_root, 2, "Ellipse axes")
        t0, s0 = ellipse_hcr_root(a, b)
        table = pd.DataFrame([{"a": a, "b": b, "t0": t0, "s0": s0}])
    elif args.rossi_e2:
        if args.t is None:
            raise ValueError("scan --rossi-e2 needs --t.")
        table = scan_rossi_E2(parse_range(args.c), args.t, config.grid if args.grid_given else (24, 24), args.numeric)
    else:
        raise ValueError("scan needs --rossi-e2 or --ellipse-root.")
    print(format_table(table))
    if config.out is not None:
        if str(config.out).endswith(".json"):
            emit({"command": "scan", "config": config.to_dict(), "rows": table.to_dict("records")}, config)
        else:
            write_csv(table, config.out)
    return EXIT_OK


def run_conformal_check(args: argparse.Namespace, config: RunConfig) -> int:
    model, surface = _geometry(config)
    factor = factor_from_spec(args.factor or f"random:{config.seed}")
    p = model.point(*parse_floats(args.point, 3, "Point"))
    original, transformed = conformal_check(model, surface, factor, p, Functional(args.functional))
    relative = abs(transformed - original) / max(abs(original), 1e-300)
    result = {"factor": factor.name, "original": original, "transformed": transformed, "relative_difference": relative}
    print(format_table(pd.DataFrame([result])))
    emit({"command": "conformal-check", "config": config.to_dict(), "result": result}, config)
    return EXIT_OK if relative <= CONFORMAL_TOLERANCE else EXIT_CHECK_FAILED


COMMANDS: Dict[str, Callable[[argparse.Namespace, RunConfig], int]] = {
    "models": run_models,
    "evaluate": run_evaluate,
    "residual": run_residual,
    "variation": run_variation,
    "verify": run_verify,
    "scan": run_scan,
    "conformal-check": run_conformal_check,
}


# parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="flat key = value file or a JSON report; flags override it")
    common.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    common.add_argument("--out", help="output path (JSON report, or CSV for tables)")
    common.add_argument("--seed", type=int)
    common.add_argument("--grid", help="nodes per parameter axis, NxM")
    common.add_argument("--tol-hcr", dest="tol_hcr", type=float)
    common.add_argument("--singular-eps", dest="singular_eps", type=float)
    common.add_argument("--workers", type=int, help="parallel jobs (default: $CRAREAPY_WORKERS or 1)")

    geometry = argparse.ArgumentParser(add_help=False)
    geometry.add_argument("--model", help="model spec, e.g. rossi:0.3 (see 'models')")
    geometry.add_argument("--surface", help="surface spec, e.g. rossi-sigma:0.70710678")

    parser = argparse.ArgumentParser(
        prog="crareapy",
        description="CR-invariant area functionals of surfaces in pseudohermitian 3-manifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("models", parents=[common], help="list model and surface specs")

    evaluate = sub.add_parser("evaluate", parents=[common, geometry], help="integrate E1/E2 or evaluate a density")
    evaluate.add_argument("--functional", choices=["E1", "E2"], default="E1")
    evaluate.add_argument("--point", help="chart point x,y,z for a pointwise density")

    residual = sub.add_parser(
        "residual", parents=[common, geometry], help="Euler-Lagrange residual on a parameter grid",
        epilog=f"CSV columns: {RESIDUAL_COLUMNS}.",
    )
    residual.add_argument("--which", choices=["E1", "E2"], default="E1")
    residual.add_argument("--form", choices=["general", "cyz"], default="general",
                          help="E1: general or CYZ form; E2: constant-torsion (general) or CYZ form")
    residual.add_argument("--inset", type=float, default=0.1, help="fraction kept away from non-periodic edges")

    variation = sub.add_parser("variation", parents=[common, geometry], help="first variation under a bump deformation")
    variation.add_argument("--functional", choices=["E1", "E2"], default="E1")
    variation.add_argument("--bump", required=True, help="u0,v0,width in surface parameters")
    variation.add_argument("--fields", default="1,0", help="weights f,g of e2 and T")
    variation.add_argument("--fd-step", dest="fd_step", type=float, help="deformation time step")

    verify = sub.add_parser("verify", parents=[common], help="run registered lemma checks")
    verify.add_argument("--all", action="store_true")
    verify.add_argument("--lemma", action="append", help="lemma id; may be repeated")

    scan = sub.add_parser("scan", parents=[common], help="parameter scans", epilog=f"Rossi CSV columns: {SCAN_COLUMNS}.")
    scan.add_argument("--rossi-e2", dest="rossi_e2", action="store_true", help="E2 of the Rossi tori rho1 = c")
    scan.add_argument("--t", type=float, help="Rossi parameter")
    scan.add_argument("--c", default="0.02:0.98:64", help="start:stop:count or comma list")
    scan.add_argument("--numeric", action="store_true", help="also integrate the numeric densities")
    scan.add_argument("--ellipse-root", dest="ellipse_root", help="a,b: zero of H_cr on the ellipse torus")

    conformal = sub.add_parser("conformal-check", parents=[common, geometry], help="compare densities under theta -> lambda^2 theta")
    conformal.add_argument("--factor", help="constant:<c>, linear:<c0>,<cx>,<cy>,<ct> or random:<seed>")
    conformal.add_argument("--point", required=True, help="chart point x,y,z")
    conformal.add_argument("--functional", choices=["E1", "E2"], default="E1")
    return parser


def configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(list(argv) if argv is not None else None)
    configure_logging(args.verbose)
    try:
        file_values = load_config_file(args.config) if args.config else {}
        args.grid_given = args.grid is not None or "grid" in file_values
        config = RunConfig.from_sources(file_values, vars(args))
        return COMMANDS[args.command](args, config)
    except ValueError as exc:
        logger.debug("command failed", exc_info=True)
        print(f"crareapy {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
