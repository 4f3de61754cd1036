"""
Service for one-dimensional bin packing: the three decreasing-order packing
heuristics, the weight-order split, and packing verification.
"""

from models.binpacking import CAPACITY_TOLERANCE, BppInstance, Packing, PackingAlgorithm
from models.divide_and_conquer import DcResult, SplitPair
from service.dc_service import DivideAndConquerProblem, dc_solve
from typing import Callable, List, Optional, Sequence, Union
import numpy as np


def decreasing_order(instance: BppInstance) -> List[int]:
    """Item indices by weight descending, ties by index."""
    return [int(j) for j in np.argsort(-np.asarray(instance.weights), kind="stable")]


class BinPackingService(DivideAndConquerProblem[BppInstance, Packing]):

    def pack(self, instance: BppInstance, algorithm: Union[str, PackingAlgorithm]) -> Packing:
        return self.oracle(algorithm)(instance)

    def next_fit_decreasing(self, instance: BppInstance) -> Packing:
        """Only the most recently opened bin is ever a candidate."""
        bin_of = [0] * instance.n
        current, load = -1, 0.0
        for j in decreasing_order(instance):
            w = instance.weights[j]
            if current < 0 or load + w > 1.0 + CAPACITY_TOLERANCE:
                current += 1
                load = 0.0
            load += w
            bin_of[j] = current
        return Packing(bin_of=bin_of, bin_count=current + 1)

    def first_fit_decreasing(self, instance: BppInstance) -> Packing:
        """Lowest-index bin that still fits the item."""
        bin_of = [0] * instance.n
        loads: List[float] = []
        for j in decreasing_order(instance):
            w = instance.weights[j]
            for b, load in enumerate(loads):
                if load + w <= 1.0 + CAPACITY_TOLERANCE:
                    loads[b] += w
                    bin_of[j] = b
                    break
            else:
                loads.append(w)
                bin_of[j] = len(loads) - 1
        return Packing(bin_of=bin_of, bin_count=len(loads))

    def best_fit_decreasing(self, instance: BppInstance) -> Packing:
        """Fullest bin that still fits the item, lowest index on ties."""
        bin_of = [0] * instance.n
        loads: List[float] = []
        for j in decreasing_order(instance):
            w = instance.weights[j]
            best: Optional[int] = None
            for b, load in enumerate(loads):
                if load + w <= 1.0 + CAPACITY_TOLERANCE and (best is None or load > loads[best]):
                    best = b
            if best is None:
                loads.append(w)
                bin_of[j] = len(loads) - 1
            else:
                loads[best] += w
                bin_of[j] = best
        return Packing(bin_of=bin_of, bin_count=len(loads))

    def verify(self, instance: BppInstance, packing: Packing) -> bool:
        """Every item in exactly one numbered bin, no empty bin, no overfull bin."""
        if len(packing.bin_of) != instance.n:
            return False
        if any(not 0 <= b < packing.bin_count for b in packing.bin_of):
            return False
        if set(packing.bin_of) != set(range(packing.bin_count)):
            return False
        return all(load <= 1.0 + CAPACITY_TOLERANCE for load in packing.loads(instance))

    def split(self, instance: BppInstance, order: Optional[Sequence[int]] = None) -> SplitPair[BppInstance]:
        """Odd positions of the decreasing order go left, even go right."""
        if instance.n < 2:
            raise ValueError(f"BPP split needs at least 2 items, got {instance.n}")
        order = list(order) if order is not None else decreasing_order(instance)
        left_map, right_map = order[0::2], order[1::2]
        return SplitPair(
            left=BppInstance(weights=[instance.weights[j] for j in left_map]),
            right=BppInstance(weights=[instance.weights[j] for j in right_map]),
            left_map=left_map,
            right_map=right_map,
        )

    def recombine(
        self,
        instance: BppInstance,
        pair: SplitPair[BppInstance],
        left: Packing,
        right: Packing,
    ) -> Packing:
        """Left bins keep their numbers; right bins are shifted past them."""
        bin_of = [0] * instance.n
        for child, parent in enumerate(pair.left_map):
            bin_of[parent] = left.bin_of[child]
        for child, parent in enumerate(pair.right_map):
            bin_of[parent] = right.bin_of[child] + left.bin_count
        return Packing(bin_of=bin_of, bin_count=left.bin_count + right.bin_count)

    def objective(self, solution: Packing) -> float:
        return float(solution.bin_count)

    def can_split(self, instance: BppInstance) -> bool:
        return instance.n >= 2

    def oracle(self, name: Union[str, PackingAlgorithm]) -> Callable[[BppInstance], Packing]:
        return {
            PackingAlgorithm.NFD: self.next_fit_decreasing,
            PackingAlgorithm.FFD: self.first_fit_decreasing,
            PackingAlgorithm.BFD: self.best_fit_decreasing,
        }[PackingAlgorithm(name)]

    def dc(
        self,
        instance: BppInstance,
        algorithm: Union[str, PackingAlgorithm] = PackingAlgorithm.FFD,
        depth: int = 1,
    ) -> DcResult[Packing]:
        return dc_solve(instance, self, self.oracle(algorithm), depth)
