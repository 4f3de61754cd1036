"""
Pydantic models for the traveling salesman problem (TSP).
"""

from enum import Enum
from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import List
import numpy as np

# Relative tolerance for cost comparisons and symmetry checks.
COST_TOLERANCE = 1e-9


class TspOracle(str, Enum):
    EXACT = "exact"
    HEURISTIC = "heuristic"


class TspInstance(BaseModel):
    """Complete directed graph given by its distance matrix."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=3, description="Number of vertices")
    dist: List[List[float]] = Field(..., description="d(u, v), zero diagonal")
    symmetric: bool = Field(..., description="d(u, v) = d(v, u) for all pairs")
    metric: bool = Field(..., description="Triangle inequality holds")

    @model_validator(mode="after")
    def _check_matrix(self) -> "TspInstance":
        if len(self.dist) != self.n or any(len(row) != self.n for row in self.dist):
            raise ValueError(f"dist must be a {self.n}x{self.n} matrix")
        matrix = self.matrix()
        if np.any(np.diag(matrix) != 0.0):
            raise ValueError("dist must have a zero diagonal")
        if np.any(matrix < 0.0) or not np.all(np.isfinite(matrix)):
            raise ValueError("distances must be finite and non-negative")
        if self.symmetric and not np.allclose(matrix, matrix.T, rtol=COST_TOLERANCE, atol=0.0):
            raise ValueError("instance flagged symmetric but dist is not")
        return self

    def matrix(self) -> np.ndarray:
        return np.asarray(self.dist, dtype=np.float64)

    def is_metric(self, tolerance: float = 1e-12) -> bool:
        """O(N^3) triangle-inequality check."""
        d = self.matrix()
        # via[u, w, v] = d(u, w) + d(w, v)
        via = d[:, :, None] + d[None, :, :]
        return bool(np.all(d[:, None, :] <= via + tolerance))


class Tour(BaseModel):
    """Hamiltonian cycle given as a vertex order; the closing arc is implicit."""

    model_config = ConfigDict(frozen=True)

    order: List[int] = Field(..., description="Vertices in visiting order")
    cost: float = Field(..., ge=0.0)

    @classmethod
    def from_order(cls, instance: TspInstance, order: List[int]) -> "Tour":
        d = instance.matrix()
        idx = np.asarray(order, dtype=np.intp)
        cost = float(d[idx, np.roll(idx, -1)].sum())
        return cls(order=[int(v) for v in order], cost=cost)

    def canonical(self) -> List[int]:
        """Rotation starting at the lowest vertex, orientation kept."""
        start = self.order.index(min(self.order))
        return self.order[start:] + self.order[:start]

    def is_hamiltonian(self, n: int) -> bool:
        return len(self.order) == n and set(self.order) == set(range(n))


class VertexEfficiency(BaseModel):
    model_config = ConfigDict(frozen=True)

    g: List[float] = Field(..., description="Total incident distance per vertex")
    order: List[int] = Field(..., description="Vertices sorted by g ascending, ties by index")
