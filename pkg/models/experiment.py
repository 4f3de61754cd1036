"""
Pydantic models for instance generation specs, experiment specs and reports.
"""

from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from typing import Any, Dict, FrozenSet, List, Optional
import numpy as np

UINT64_MAX = 2**64 - 1


class ProblemKind(str, Enum):
    DKP = "dkp"
    BPP = "bpp"
    TSP_MS = "tsp-ms"
    TSP_MA = "tsp-ma"
    TSP_NMS = "tsp-nms"

    @property
    def is_tsp(self) -> bool:
        return self in (ProblemKind.TSP_MS, ProblemKind.TSP_MA, ProblemKind.TSP_NMS)

    @property
    def case(self) -> str:
        """Short label used in report columns (ms, ma, nms, dkp, bpp)."""
        return self.value.removeprefix("tsp-")


MIN_SIZE: Dict[ProblemKind, int] = {
    ProblemKind.DKP: 2,
    ProblemKind.BPP: 1,
    ProblemKind.TSP_MS: 6,
    ProblemKind.TSP_MA: 6,
    ProblemKind.TSP_NMS: 6,
}

ORACLES: Dict[ProblemKind, FrozenSet[str]] = {
    ProblemKind.DKP: frozenset({"exact", "greedy"}),
    ProblemKind.BPP: frozenset({"nfd", "ffd", "bfd"}),
    ProblemKind.TSP_MS: frozenset({"exact", "heuristic"}),
    ProblemKind.TSP_MA: frozenset({"exact", "heuristic"}),
    ProblemKind.TSP_NMS: frozenset({"exact", "heuristic"}),
}

DEFAULT_ORACLES: Dict[ProblemKind, List[str]] = {
    ProblemKind.DKP: ["exact"],
    ProblemKind.BPP: ["nfd", "ffd", "bfd"],
    ProblemKind.TSP_MS: ["exact"],
    ProblemKind.TSP_MA: ["exact"],
    ProblemKind.TSP_NMS: ["exact"],
}


class GenSpec(BaseModel):
    """Parameters of one seeded random instance."""

    model_config = ConfigDict(frozen=True)

    problem: ProblemKind
    n: int = Field(..., description="Item or vertex count")
    d: int = Field(1, ge=1, description="Constraint count (d-KP only)")
    tightness: float = Field(0.5, gt=0.0, lt=1.0, description="Target tightness ratio (d-KP only)")
    seed: int = Field(0, ge=0, le=UINT64_MAX)

    @model_validator(mode="after")
    def _check_size(self) -> "GenSpec":
        if self.n < MIN_SIZE[self.problem]:
            raise ValueError(f"{self.problem.value} needs n >= {MIN_SIZE[self.problem]}, got {self.n}")
        return self


class ExperimentCell(BaseModel):
    """One row of a report: size plus the remaining experiment axes."""

    model_config = ConfigDict(frozen=True)

    n: int
    d: Optional[int] = None
    tightness: Optional[float] = None
    oracle: str

    @property
    def label(self) -> str:
        parts = [f"N={self.n}"]
        if self.d is not None:
            parts.append(f"D={self.d}")
        if self.tightness is not None:
            parts.append(f"t={self.tightness}")
        parts.append(self.oracle)
        return " ".join(parts)


class ExperimentSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    problem: ProblemKind
    n_values: List[int] = Field(..., min_length=1)
    d_values: List[int] = Field(default_factory=lambda: [2])
    tightness_values: List[float] = Field(default_factory=lambda: [0.5])
    oracles: List[str] = Field(default_factory=list)
    trials: int = Field(..., ge=2, description="Bernoulli trials k per cell")
    base_seed: int = Field(0, ge=0, le=UINT64_MAX)
    pilot: Optional[int] = Field(None, ge=2, description="Pilot sample size for the variance estimate")
    auto_k: bool = Field(False, description="Raise trials to the pilot recommendation")
    depth: int = Field(1, ge=1)

    @field_validator("n_values")
    @classmethod
    def _check_ascending(cls, values: List[int]) -> List[int]:
        if any(a >= b for a, b in zip(values, values[1:])):
            raise ValueError("n_values must be strictly ascending")
        return values

    @model_validator(mode="before")
    @classmethod
    def _default_oracles(cls, data):
        if isinstance(data, dict) and not data.get("oracles") and data.get("problem") is not None:
            data = {**data, "oracles": list(DEFAULT_ORACLES[ProblemKind(data["problem"])])}
        return data

    @model_validator(mode="after")
    def _check_axes(self) -> "ExperimentSpec":
        unknown = set(self.oracles) - ORACLES[self.problem]
        if unknown:
            raise ValueError(f"oracles {sorted(unknown)} not available for {self.problem.value}")
        if self.n_values[0] < MIN_SIZE[self.problem]:
            raise ValueError(f"{self.problem.value} needs n >= {MIN_SIZE[self.problem]}")
        if self.problem == ProblemKind.DKP:
            if not self.d_values or any(d < 1 for d in self.d_values):
                raise ValueError("d_values must be positive")
            if not self.tightness_values or any(not 0.0 < t < 1.0 for t in self.tightness_values):
                raise ValueError("tightness_values must lie in (0, 1)")
        return self

    def cells(self) -> List[ExperimentCell]:
        if self.problem == ProblemKind.DKP:
            return [
                ExperimentCell(n=n, d=d, tightness=t, oracle=oracle)
                for t in self.tightness_values
                for n in self.n_values
                for d in self.d_values
                for oracle in self.oracles
            ]
        return [ExperimentCell(n=n, oracle=oracle) for n in self.n_values for oracle in self.oracles]

    def gen_spec(self, cell: ExperimentCell, seed: int) -> GenSpec:
        return GenSpec(
            problem=self.problem,
            n=cell.n,
            d=cell.d or 1,
            tightness=cell.tightness or 0.5,
            seed=seed,
        )


class TrialResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    cell: ExperimentCell
    trial_index: int = Field(..., ge=0)
    seed: int
    z_full: float
    z_dc: float
    t_full: float = Field(..., ge=0.0)
    t_dc: float = Field(..., ge=0.0)
    s_f: float
    t_f: float


class SampleStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=2, description="Trial count")
    mean: float
    variance: float = Field(..., ge=0.0, description="Unbiased sample variance")

    @classmethod
    def from_values(cls, values: List[float]) -> "SampleStats":
        array = np.asarray(values, dtype=np.float64)
        return cls(n=len(array), mean=float(array.mean()), variance=float(array.var(ddof=1)))


class PerfPair(BaseModel):
    model_config = ConfigDict(frozen=True)

    s_f: float = Field(..., ge=0.0, description="Solution fraction in percent")
    t_f: float = Field(..., ge=0.0, description="Time fraction in percent")


class CoefficientSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    variance: float = Field(..., ge=0.0)
    ci_low: float
    ci_high: float

    @model_validator(mode="after")
    def _check_bracket(self) -> "CoefficientSummary":
        if not self.ci_low <= self.mean <= self.ci_high:
            raise ValueError("confidence interval must bracket the mean")
        return self


class ReportRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    problem: ProblemKind
    cell: ExperimentCell
    trials: int
    base_seed: int
    s_f: CoefficientSummary
    t_f: CoefficientSummary


class ExperimentReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    problem: ProblemKind
    base_seed: int
    trials: int
    rows: List[ReportRow]
    pilot_variance: Optional[float] = Field(None, description="Worst S_f variance over the pilot cells")
    recommended_trials: Optional[int] = Field(None, description="Trial count suggested by the pilot")


class SolveSummary(BaseModel):
    """What `solve` prints for one instance."""

    problem: str
    n: int
    method: str = Field(..., description="full or dc")
    oracle: str
    depth: Optional[int] = None
    objective: float
    wall_time: float = Field(..., ge=0.0, description="Oracle time; t_left + t_right for dc")
    t_left: Optional[float] = None
    t_right: Optional[float] = None
    solution: Dict[str, Any]
