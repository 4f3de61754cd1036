"""
Pydantic models shared by every divide-and-conquer problem module.
"""

from pydantic import BaseModel, ConfigDict, Field, model_validator
from typing import Generic, List, TypeVar

InstanceT = TypeVar("InstanceT")
SolutionT = TypeVar("SolutionT")


class SplitPair(BaseModel, Generic[InstanceT]):
    """Left/right subinstances of one split plus their maps back to the parent."""

    model_config = ConfigDict(frozen=True)

    left: InstanceT = Field(..., description="Subinstance built from odd sorted positions")
    right: InstanceT = Field(..., description="Subinstance built from even sorted positions")
    left_map: List[int] = Field(..., description="Parent index of each left item/vertex")
    right_map: List[int] = Field(..., description="Parent index of each right item/vertex")
    flagged: bool = Field(False, description="A child holds an item it can never select")

    @model_validator(mode="after")
    def _check_partition(self) -> "SplitPair":
        left, right = set(self.left_map), set(self.right_map)
        if len(left) != len(self.left_map) or len(right) != len(self.right_map):
            raise ValueError("index maps must not repeat parent indices")
        if left & right:
            raise ValueError("index maps must be disjoint")
        n = len(self.left_map) + len(self.right_map)
        if left | right != set(range(n)):
            raise ValueError("index maps must cover the parent index set")
        if len(self.left_map) != (n + 1) // 2:
            raise ValueError("left side must hold ceil(N/2) entries")
        return self


class TimedSolve(BaseModel, Generic[SolutionT]):
    """An oracle result with the wall-clock time of the solve call alone."""

    model_config = ConfigDict(frozen=True)

    solution: SolutionT
    wall_time: float = Field(..., ge=0.0, description="Seconds spent inside the solve call")


class DcResult(BaseModel, Generic[SolutionT]):
    """Recombined solution with the sequential-sum timing of its subproblems."""

    model_config = ConfigDict(frozen=True)

    combined: SolutionT
    z_dc: float = Field(..., description="Objective value of the combined solution")
    t_dc: float = Field(..., ge=0.0, description="t_left + t_right")
    t_left: float = Field(..., ge=0.0)
    t_right: float = Field(..., ge=0.0)

    @classmethod
    def from_children(
        cls,
        combined: SolutionT,
        z_dc: float,
        t_left: float,
        t_right: float,
    ) -> "DcResult[SolutionT]":
        return cls(combined=combined, z_dc=z_dc, t_dc=t_left + t_right, t_left=t_left, t_right=t_right)
