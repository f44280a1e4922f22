# src/crareapy/verify/report.py

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import List

import numpy as np
import pandas as pd

from crareapy.utils.tables import format_table


class Comparison(str, Enum):
    """How a measured value is compared with its expected value."""

    EQUAL = "equal"  # |value - expected| <= tolerance
    BELOW = "below"  # value < expected
    ABOVE = "above"  # value > expected


class Expectation(str, Enum):
    """Whether a registered claim is expected to hold numerically."""

    HOLDS = "holds"
    REFUTED = "refuted"


@dataclass(frozen=True)
class MeasuredRow:
    """
    One measured quantity of a lemma check.

    Attributes:
        name (str): What was measured.
        value (float): Measured value.
        expected (float): Target value, or the bound for BELOW/ABOVE rows.
        tolerance (float): Allowed deviation of EQUAL rows.
        kind (Comparison): Comparison mode.
        provenance (str): Where the expected value comes from.
    """

    name: str
    value: float
    expected: float
    tolerance: float = 0.0
    kind: Comparison = Comparison.EQUAL
    provenance: str = ""

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        if self.kind is Comparison.BELOW:
            return self.value < self.expected
        if self.kind is Comparison.ABOVE:
            return self.value > self.expected
        return abs(self.value - self.expected) <= self.tolerance


def equal(name: str, value: float, expected: float, tolerance: float, provenance: str = "") -> MeasuredRow:
    return MeasuredRow(name, float(value), float(expected), float(tolerance), Comparison.EQUAL, provenance)


def below(name: str, value: float, bound: float, provenance: str = "") -> MeasuredRow:
    return MeasuredRow(name, float(value), float(bound), 0.0, Comparison.BELOW, provenance)


def above(name: str, value: float, bound: float, provenance: str = "") -> MeasuredRow:
    return MeasuredRow(name, float(value), float(bound), 0.0, Comparison.ABOVE, provenance)


@dataclass
class LemmaReport:
    """
    Outcome of one registered check.

    ``status`` is "pass" iff every measured row is within tolerance. A check whose
    expectation is REFUTED matches its expectation when the status is "fail".
    """

    lemma_id: str
    measured: List[MeasuredRow] = field(default_factory=list)
    runtime_ms: int = 0
    expectation: Expectation = Expectation.HOLDS
    note: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.measured and all(row.passed for row in self.measured) else "fail"

    @property
    def matches_expectation(self) -> bool:
        return (self.status == "pass") == (self.expectation is Expectation.HOLDS)

    def to_frame(self) -> pd.DataFrame:
        """Measured rows as a table with a ``passed`` column."""
        rows = []
        for row in self.measured:
            record = asdict(row)
            record["kind"] = row.kind.value
            record["passed"] = row.passed
            rows.append(record)
        columns = ["name", "value", "expected", "tolerance", "kind", "passed", "provenance"]
        return pd.DataFrame(rows, columns=columns)

    def to_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "status": self.status,
            "expectation": self.expectation.value,
            "matches_expectation": self.matches_expectation,
            "note": self.note,
            "runtime_ms": self.runtime_ms,
            "measured": [
                {**asdict(row), "kind": row.kind.value, "passed": row.passed} for row in self.measured
            ],
        }

    def display(self) -> str:
        """Aligned text rendering for terminals."""
        header = (
            f"Lemma {self.lemma_id}: {self.status} "
            f"(expected {self.expectation.value}, {self.runtime_ms} ms)"
        )
        lines = [header, format_table(self.to_frame().drop(columns="provenance"))]
        if self.note:
            lines.append(f"note: {self.note}")
        return "\n".join(lines)


def summary_frame(reports: List[LemmaReport]) -> pd.DataFrame:
    """One line per report."""
    return pd.DataFrame(
        [
            {
                "lemma": r.lemma_id,
                "status": r.status,
                "expectation": r.expectation.value,
                "matches": r.matches_expectation,
                "runtime_ms": r.runtime_ms,
            }
            for r in reports
        ]
    )
