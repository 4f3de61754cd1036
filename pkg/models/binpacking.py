"""
Pydantic models for the one-dimensional bin packing problem (BPP).
"""

from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, field_validator
from typing import List

# Loads are compared against the unit capacity with this slack.
CAPACITY_TOLERANCE = 1e-9


class PackingAlgorithm(str, Enum):
    NFD = "nfd"
    FFD = "ffd"
    BFD = "bfd"


class BppInstance(BaseModel):
    """Item weights normalized to a unit bin capacity."""

    model_config = ConfigDict(frozen=True)

    weights: List[float] = Field(..., min_length=1, description="w(j) in (0, 1]")

    @field_validator("weights")
    @classmethod
    def _check_range(cls, weights: List[float]) -> List[float]:
        for j, w in enumerate(weights):
            if not 0.0 < w <= 1.0:
                raise ValueError(f"weight {j} = {w} is outside (0, 1]")
        return weights

    @property
    def n(self) -> int:
        return len(self.weights)


class Packing(BaseModel):
    """Bin index per item; bins are numbered 0..bin_count-1 and all nonempty."""

    model_config = ConfigDict(frozen=True)

    bin_of: List[int] = Field(..., description="Bin holding each item")
    bin_count: int = Field(..., ge=0, description="Number of bins used (z)")

    def bins(self) -> List[List[int]]:
        grouped: List[List[int]] = [[] for _ in range(self.bin_count)]
        for item, b in enumerate(self.bin_of):
            grouped[b].append(item)
        return grouped

    def loads(self, instance: BppInstance) -> List[float]:
        loads = [0.0] * self.bin_count
        for item, b in enumerate(self.bin_of):
            loads[b] += instance.weights[item]
        return loads
