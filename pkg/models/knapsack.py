"""
Pydantic models for the multidimensional knapsack problem (d-KP).
"""

from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import List


class DkpOracle(str, Enum):
    EXACT = "exact"
    GREEDY = "greedy"


class DkpInstance(BaseModel):
    """Capacities, profits and a D x N weight matrix.

    Capacities may be zero and single weights may exceed a capacity only on
    children produced by a split; `satisfies_hypothesis` tells generated and
    parsed instances apart from such children.
    """

    model_config = ConfigDict(frozen=True)

    d: int = Field(..., ge=1, description="Number of constraints D")
    n: int = Field(..., ge=1, description="Number of items N")
    capacities: List[int] = Field(..., description="c(i), one per constraint")
    profits: List[int] = Field(..., description="p(j), one per item")
    weights: List[List[int]] = Field(..., description="w(i, j), D rows of N entries")

    @model_validator(mode="after")
    def _check_shape(self) -> "DkpInstance":
        if len(self.capacities) != self.d:
            raise ValueError(f"expected {self.d} capacities, got {len(self.capacities)}")
        if len(self.profits) != self.n:
            raise ValueError(f"expected {self.n} profits, got {len(self.profits)}")
        if len(self.weights) != self.d or any(len(row) != self.n for row in self.weights):
            raise ValueError(f"weights must be a {self.d}x{self.n} matrix")
        if any(c < 0 for c in self.capacities):
            raise ValueError("capacities must be non-negative")
        if any(p < 1 for p in self.profits):
            raise ValueError("profits must be >= 1")
        if any(w < 1 for row in self.weights for w in row):
            raise ValueError("weights must be positive")
        return self

    @property
    def flagged(self) -> bool:
        """True when some item is heavier than a capacity and can never be chosen."""
        return any(
            w > c for row, c in zip(self.weights, self.capacities) for w in row
        )

    def satisfies_hypothesis(self) -> bool:
        """Every item fits alone and no constraint is redundant."""
        if any(c < 1 for c in self.capacities) or self.flagged:
            return False
        return all(sum(row) > c for row, c in zip(self.weights, self.capacities))


class DkpSolution(BaseModel):
    model_config = ConfigDict(frozen=True)

    chosen: List[bool] = Field(..., description="x(j) for every item")
    value: int = Field(..., ge=0, description="Total profit of the chosen items")

    @classmethod
    def from_chosen(cls, instance: DkpInstance, chosen: List[bool]) -> "DkpSolution":
        value = sum(p for p, x in zip(instance.profits, chosen) if x)
        return cls(chosen=list(chosen), value=value)

    def is_feasible(self, instance: DkpInstance) -> bool:
        if len(self.chosen) != instance.n:
            return False
        for row, c in zip(instance.weights, instance.capacities):
            if sum(w for w, x in zip(row, self.chosen) if x) > c:
                return False
        return self.value == sum(p for p, x in zip(instance.profits, self.chosen) if x)


class EfficiencyOrder(BaseModel):
    """Efficiency coefficients and the descending order they induce."""

    model_config = ConfigDict(frozen=True)

    coefficients: List[float] = Field(..., description="g(j) per item")
    order: List[int] = Field(..., description="Item indices sorted by g descending, ties by index")
