"""
Problem-agnostic divide-and-conquer engine: split, solve the children with an
oracle, recombine, and keep the per-child wall-clock times.
"""

from abc import ABC, abstractmethod
from models.divide_and_conquer import DcResult, SplitPair, TimedSolve
from models.errors import SubproblemError
from typing import Callable, Generic, Tuple, TypeVar
import time

I = TypeVar("I")
S = TypeVar("S")

Oracle = Callable[[I], S]


def timed(f: Callable[[I], S], instance: I) -> TimedSolve[S]:
    """Run `f(instance)` and measure the call alone with a monotonic clock."""
    start = time.perf_counter()
    solution = f(instance)
    elapsed = time.perf_counter() - start
    return TimedSolve(solution=solution, wall_time=max(elapsed, 0.0))


class DivideAndConquerProblem(ABC, Generic[I, S]):
    """Splitter, recombiner and objective of one problem module."""

    @abstractmethod
    def split(self, instance: I) -> SplitPair[I]:
        pass

    @abstractmethod
    def recombine(self, instance: I, pair: SplitPair[I], left: S, right: S) -> S:
        """Merge child solutions (child indices) into one parent solution."""
        pass

    @abstractmethod
    def objective(self, solution: S) -> float:
        pass

    @abstractmethod
    def can_split(self, instance: I) -> bool:
        pass


def dc_solve(
    instance: I,
    problem: DivideAndConquerProblem[I, S],
    oracle: Oracle,
    depth: int = 1,
    path: str = "root",
) -> DcResult[S]:
    """
    Solve `instance` by splitting it `depth` times along the efficiency order.

    At depth 1 each half goes to the oracle; deeper levels recurse while the
    child can still be split. t_dc is the sum of the children's oracle times;
    splitting and recombination are not timed.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")

    pair = problem.split(instance)
    left, t_left = _solve_child(pair.left, problem, oracle, depth - 1, f"{path}/lt")
    right, t_right = _solve_child(pair.right, problem, oracle, depth - 1, f"{path}/rt")

    combined = problem.recombine(instance, pair, left, right)
    return DcResult.from_children(
        combined=combined,
        z_dc=problem.objective(combined),
        t_left=t_left,
        t_right=t_right,
    )


def _solve_child(
    child: I,
    problem: DivideAndConquerProblem[I, S],
    oracle: Oracle,
    remaining_depth: int,
    path: str,
) -> Tuple[S, float]:
    if remaining_depth >= 1 and problem.can_split(child):
        result = dc_solve(child, problem, oracle, remaining_depth, path)
        return result.combined, result.t_dc
    try:
        solve = timed(oracle, child)
    except Exception as e:
        raise SubproblemError(path, e) from e
    return solve.solution, solve.wall_time
