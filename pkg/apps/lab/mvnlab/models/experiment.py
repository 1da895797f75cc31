"""
Validated experiment request.

Built by :class:`mvnlab.utils.config_loader.ExperimentConfigLoader` from bundled
defaults, an optional YAML file and command-line flags.
"""

from __future__ import annotations

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator

from mvnlab.families import FAMILIES

SUBGROUP_KINDS = ("FullUnitary", "CommutantFixed", "BlockDeterminantOne", "DiagonalUnitaries")


class Command(str, Enum):
    """Experiment commands understood by the runner."""

    OPS_CHECK = "ops-check"
    TOPOLOGY_COMPARE = "topology-compare"
    TROTTER = "trotter"
    NELSON = "nelson"
    LIE_CLOSURE = "lie-closure"
    TENSOR_LAWS = "tensor-laws"
    EXP_INJECTIVITY = "exp-injectivity"


def _split(value: Any) -> Any:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    if isinstance(value, (int, float)):
        return [value]
    return value


class ExperimentConfig(BaseModel):
    """One experiment run: what to compute, on what, and where to write it."""

    model_config = ConfigDict(frozen=True, use_enum_values=False)

    command: Command = Field(description="Experiment to run")
    inputs: list[str] = Field(default_factory=list, description="Operator or algebra files")
    out: str | None = Field(None, description="CSV output path; stdout when unset")
    seed: int = Field(0, description="Seed for every random draw", ge=0)
    tol: float | None = Field(None, description="Pass/fail tolerance", gt=0.0)
    n_schedule: list[int] = Field(default_factory=list, description="Indices n for product formulas")
    t_values: list[float] = Field(default_factory=list, description="Time parameters t")
    family: str | None = Field(None, description="Bundled operator family name")
    spec: str | None = Field(None, description="Subgroup kind for lie-closure")
    params: dict[str, Any] = Field(default_factory=dict, description="Command-specific parameters")

    @field_validator("inputs", mode="before")
    @classmethod
    def parse_inputs(cls, v: Any) -> Any:
        """Parse comma-separated paths."""
        return _split(v)

    @field_validator("n_schedule", mode="before")
    @classmethod
    def parse_n_schedule(cls, v: Any) -> Any:
        """Parse ``"8,16,32"`` into integers."""
        return [int(x) for x in _split(v)]

    @field_validator("t_values", mode="before")
    @classmethod
    def parse_t_values(cls, v: Any) -> Any:
        return [float(x) for x in _split(v)]

    @field_validator("n_schedule")
    @classmethod
    def check_n_schedule(cls, v: list[int]) -> list[int]:
        if any(n < 1 for n in v):
            raise ValueError(f"n schedule entries must be ≥ 1, got {v}")
        return v

    @field_validator("family")
    @classmethod
    def check_family(cls, v: str | None) -> str | None:
        if v is not None and v not in FAMILIES:
            raise ValueError(f"Unknown family: {v}. Available families: {sorted(FAMILIES)}")
        return v

    @field_validator("spec")
    @classmethod
    def check_spec(cls, v: str | None) -> str | None:
        if v is not None and v != "all" and v not in SUBGROUP_KINDS:
            raise ValueError(f"Unknown subgroup kind: {v}. Available kinds: {list(SUBGROUP_KINDS)} or 'all'")
        return v

    def param(self, name: str, default: Any = None) -> Any:
        return self.params.get(name, default)


__all__ = ["Command", "ExperimentConfig", "SUBGROUP_KINDS"]
