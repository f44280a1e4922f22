# src/crareapy/utils/tables.py

import pandas as pd
from tabulate import tabulate


def format_table(df: pd.DataFrame, tablefmt: str = "github", floatfmt: str = ".10g") -> str:
    """
    Render a DataFrame as an aligned text table.

    Args:
        df (pd.DataFrame): Table to render.
        tablefmt (str): tabulate format. Default is "github".
        floatfmt (str): Float format. Default is ".10g".

    Returns:
        str: The rendered table.
    """
    return tabulate(df, headers="keys", tablefmt=tablefmt, showindex=False, floatfmt=floatfmt)


def write_csv(df: pd.DataFrame, path) -> None:
    """Write a table with 17 significant digits so floats round-trip."""
    df.to_csv(path, index=False, float_format="%.17g")
