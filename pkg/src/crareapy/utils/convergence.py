# src/crareapy/utils/convergence.py

from typing import Sequence

import numpy as np
import pandas as pd
import statsmodels.api as sm


def observed_order(steps: Sequence[float], values: Sequence[float]) -> dict:
    """
    Estimate the observed convergence order of a sequence of approximations.

    Successive differences ``|v_i - v_{i+1}|`` are regressed on the step sizes in
    log-log scale with an OLS fit; the slope is the observed order.

    Args:
        steps (Sequence[float]): Decreasing step sizes (or 1 / grid size).
        values (Sequence[float]): Approximation obtained with each step.

    Returns:
        dict: ``order`` (slope), ``stderr`` (NaN with fewer than three differences)
        and ``table`` (pd.DataFrame with the differences).
    """
    steps = np.asarray(steps, dtype=float)
    values = np.asarray(values, dtype=float)
    if len(steps) != len(values) or len(steps) < 3:
        raise ValueError("At least three (step, value) pairs are required.")

    differences = np.abs(np.diff(values))
    if np.any(differences <= 0.0):
        raise ValueError("Successive approximations must differ to estimate an order.")

    table = pd.DataFrame({"step": steps[:-1], "difference": differences})
    design = sm.add_constant(np.log(table["step"].to_numpy()))
    results = sm.OLS(np.log(table["difference"].to_numpy()), design).fit()
    stderr = results.bse[1] if len(table) > 2 else float("nan")
    return {"order": float(results.params[1]), "stderr": float(stderr), "table": table}
