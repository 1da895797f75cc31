"""
Report models for experiment output.

Every report serializes to CSV through ``csv_header()`` and ``csv_rows()``. Floats
are written with ``repr`` so parsing a file back recovers them exactly; missing
values are written as empty fields.
"""

from __future__ import annotations

from enum import Enum
from typing import Any, ClassVar

from pydantic import BaseModel, Field


class MetricVerdict(str, Enum):
    """Finite-data convergence verdict for one metric."""

    CONVERGING = "converging"
    NOT_CONVERGING = "not_converging"


class PropertyVerdict(str, Enum):
    """Outcome of a single property check."""

    PASS = "pass"
    FAIL = "fail"

    @classmethod
    def of(cls, ok: bool) -> PropertyVerdict:
        return cls.PASS if ok else cls.FAIL


def csv_field(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


class CsvReport(BaseModel):
    """Base for reports made of flat rows with a fixed column order."""

    columns: ClassVar[tuple[str, ...]] = ()

    rows: list[Any] = Field(default_factory=list, description="Report rows in output order")

    def csv_header(self) -> list[str]:
        return list(self.columns)

    def csv_rows(self) -> list[list[str]]:
        return [[csv_field(getattr(row, column)) for column in self.columns] for row in self.rows]


class MetricRow(BaseModel):
    """Distances from one sequence element to the limit."""

    index: int = Field(description="Sequence index n")
    srt: float = Field(description="Strong resolvent distance", ge=0.0)
    srt_bound: float = Field(description="Truncation bound for srt", ge=0.0)
    set: float = Field(description="Strong exponential distance", ge=0.0)
    set_bound: float = Field(description="Truncation and grid bound for set", ge=0.0)
    measure: float = Field(description="τ-measure F-norm distance", ge=0.0, le=1.0)
    sot: float | None = Field(None, description="Strong operator distance (bounded sequences only)")
    sot_bound: float | None = Field(None, description="Truncation bound for sot")


class MetricReport(CsvReport):
    """Per-index metric values for an operator sequence, with verdicts."""

    columns: ClassVar[tuple[str, ...]] = (
        "index",
        "srt",
        "srt_bound",
        "set",
        "set_bound",
        "measure",
        "sot",
        "sot_bound",
    )

    rows: list[MetricRow] = Field(default_factory=list, description="One row per sequence index")
    verdicts: dict[str, MetricVerdict] = Field(default_factory=dict, description="Verdict per metric name")
    threshold: float = Field(1e-3, description="Convergence threshold used for the verdicts", gt=0.0)
    family: str | None = Field(None, description="Name of the generating family, if any")

    def all_converging(self) -> bool:
        return bool(self.verdicts) and all(v is MetricVerdict.CONVERGING for v in self.verdicts.values())

    def none_converging(self) -> bool:
        return all(v is MetricVerdict.NOT_CONVERGING for v in self.verdicts.values())


class PropertyRow(BaseModel):
    """One checked property of one element."""

    element: str = Field(description="What was checked (e.g. 'A+B', 'n=64', 'pentagon')")
    test: str = Field(description="Property name")
    t: float | None = Field(None, description="Time parameter, when the check has one")
    verdict: PropertyVerdict = Field(description="pass or fail")
    residual: float = Field(description="Measured residual behind the verdict")


class PropertyReport(CsvReport):
    """Rows of property checks (Lie closure, product formulas, tensor laws, ...)."""

    columns: ClassVar[tuple[str, ...]] = ("element", "test", "t", "verdict", "residual")

    rows: list[PropertyRow] = Field(default_factory=list, description="Checks in evaluation order")

    def add(self, element: str, test: str, ok: bool, residual: float, t: float | None = None) -> None:
        self.rows.append(
            PropertyRow(element=element, test=test, t=t, verdict=PropertyVerdict.of(ok), residual=float(residual))
        )

    def extend(self, other: PropertyReport) -> None:
        self.rows.extend(other.rows)

    @property
    def passed(self) -> bool:
        return all(row.verdict is PropertyVerdict.PASS for row in self.rows)

    def failures(self) -> list[PropertyRow]:
        return [row for row in self.rows if row.verdict is PropertyVerdict.FAIL]


class CoherenceRow(BaseModel):
    """One coherence axiom instance checked as a permutation identity."""

    axiom: str = Field(description="Axiom name (pentagon, triangle, naturality, braiding, ...)")
    objects: str = Field(description="Shapes of the algebras involved")
    permutation_size: int = Field(description="Number of coordinates permuted", ge=0)
    verdict: PropertyVerdict = Field(description="pass or fail")


class CoherenceReport(CsvReport):
    """Pass/fail table of tensor-category coherence checks."""

    columns: ClassVar[tuple[str, ...]] = ("axiom", "objects", "permutation_size", "verdict")

    rows: list[CoherenceRow] = Field(default_factory=list, description="Checks in evaluation order")

    def add(self, axiom: str, objects: str, permutation_size: int, ok: bool) -> None:
        self.rows.append(
            CoherenceRow(
                axiom=axiom, objects=objects, permutation_size=permutation_size, verdict=PropertyVerdict.of(ok)
            )
        )

    @property
    def passed(self) -> bool:
        return all(row.verdict is PropertyVerdict.PASS for row in self.rows)


__all__ = [
    "MetricVerdict",
    "PropertyVerdict",
    "CsvReport",
    "MetricRow",
    "MetricReport",
    "PropertyRow",
    "PropertyReport",
    "CoherenceRow",
    "CoherenceReport",
    "csv_field",
]
