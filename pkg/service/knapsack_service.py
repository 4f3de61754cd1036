"""
Service for the multidimensional knapsack problem: efficiency ordering,
the capacity-proportional split, exact branch-and-bound and greedy oracles.
"""

from models.divide_and_conquer import DcResult, SplitPair
from models.knapsack import DkpInstance, DkpOracle, DkpSolution, EfficiencyOrder
from service.dc_service import DivideAndConquerProblem, dc_solve
from typing import Callable, List, Optional, Sequence, Tuple, Union
import numpy as np


class KnapsackService(DivideAndConquerProblem[DkpInstance, DkpSolution]):
    """Solves d-KP instances fully or through a divide-and-conquer split."""

    def efficiency(self, instance: DkpInstance) -> EfficiencyOrder:
        """
        g(j) = p(j) / sum_i w(i, j) / c(i), sorted descending with index tie-break.

        A zero capacity (possible on split children) makes g(j) = 0 for every
        item with weight on that constraint.
        """
        weights = np.asarray(instance.weights, dtype=np.float64)
        capacities = np.asarray(instance.capacities, dtype=np.float64)
        safe = np.where(capacities > 0, capacities, 1.0)
        scaled = np.where(capacities[:, None] > 0, weights / safe[:, None], np.inf)
        coefficients = np.asarray(instance.profits, dtype=np.float64) / scaled.sum(axis=0)
        order = np.argsort(-coefficients, kind="stable")
        return EfficiencyOrder(
            coefficients=coefficients.tolist(),
            order=[int(j) for j in order],
        )

    def tightness(self, instance: DkpInstance) -> List[float]:
        """t(i) = c(i) / sum_j w(i, j)."""
        return [c / sum(row) for row, c in zip(instance.weights, instance.capacities)]

    def split(self, instance: DkpInstance, order: Optional[Sequence[int]] = None) -> SplitPair[DkpInstance]:
        """
        Odd sorted positions go left, even go right. The left capacity is
        ceil(c(i) * sum_left w(i, j) / sum_j w(i, j)) and the right side gets
        the rest. `order` pins a precomputed item order instead of g.
        """
        if instance.n < 2:
            raise ValueError(f"d-KP split needs at least 2 items, got {instance.n}")
        if order is None:
            order = self.efficiency(instance).order
        order = list(order)
        if sorted(order) != list(range(instance.n)):
            raise ValueError("order must be a permutation of the item indices")

        left_map, right_map = order[0::2], order[1::2]
        left_caps: List[int] = []
        for row, c in zip(instance.weights, instance.capacities):
            part = sum(row[j] for j in left_map)
            # integer ceiling of c * part / total
            left_caps.append(-((-c * part) // sum(row)))
        right_caps = [c - cl for c, cl in zip(instance.capacities, left_caps)]

        left = self._restrict(instance, left_map, left_caps)
        right = self._restrict(instance, right_map, right_caps)
        return SplitPair(
            left=left,
            right=right,
            left_map=left_map,
            right_map=right_map,
            flagged=left.flagged or right.flagged,
        )

    @staticmethod
    def _restrict(instance: DkpInstance, items: List[int], capacities: List[int]) -> DkpInstance:
        return DkpInstance(
            d=instance.d,
            n=len(items),
            capacities=capacities,
            profits=[instance.profits[j] for j in items],
            weights=[[row[j] for j in items] for row in instance.weights],
        )

    def solve_greedy(self, instance: DkpInstance) -> DkpSolution:
        """Take items in efficiency order whenever they fit every residual capacity."""
        residual = list(instance.capacities)
        chosen = [False] * instance.n
        for j in self.efficiency(instance).order:
            if all(row[j] <= r for row, r in zip(instance.weights, residual)):
                chosen[j] = True
                residual = [r - row[j] for row, r in zip(instance.weights, residual)]
        return DkpSolution.from_chosen(instance, chosen)

    def solve_exact(self, instance: DkpInstance) -> DkpSolution:
        """
        Depth-first branch-and-bound over items in efficiency order, include
        branch first. The bound is the smallest single-constraint Dantzig
        bound over the undecided items. Only strict improvements replace the
        incumbent, so among optimal solutions the first one met in efficiency
        order wins.
        """
        d = instance.d
        order = self.efficiency(instance).order
        caps = tuple(instance.capacities)
        # items heavier than a capacity are never selectable
        items = [j for j in order if all(instance.weights[i][j] <= caps[i] for i in range(d))]
        m = len(items)
        profits = [instance.profits[j] for j in items]
        weights = [[instance.weights[i][j] for j in items] for i in range(d)]
        ratio_orders = [
            sorted(range(m), key=lambda k, i=i: (-profits[k] / weights[i][k], k))
            for i in range(d)
        ]
        suffix = [0] * (m + 1)
        for k in range(m - 1, -1, -1):
            suffix[k] = suffix[k + 1] + profits[k]

        def bound(level: int, value: int, residual: Tuple[int, ...]) -> float:
            best_bound = float(value + suffix[level])
            for i in range(d):
                r = residual[i]
                b = float(value)
                w_i = weights[i]
                for k in ratio_orders[i]:
                    if k < level:
                        continue
                    if w_i[k] <= r:
                        r -= w_i[k]
                        b += profits[k]
                    else:
                        b += profits[k] * r / w_i[k]
                        break
                if b < best_bound:
                    best_bound = b
            return best_bound

        best_value = -1
        best_chain = None
        # frame: (level, value, residual, chain) with chain a linked list of chosen positions
        stack = [(0, 0, caps, None)]
        while stack:
            level, value, residual, chain = stack.pop()
            if level == m:
                if value > best_value:
                    best_value, best_chain = value, chain
                continue
            if int(bound(level, value, residual) + 1e-9) <= best_value:
                continue
            # exclude is pushed first so that include is explored first
            stack.append((level + 1, value, residual, chain))
            if all(weights[i][level] <= residual[i] for i in range(d)):
                stack.append((
                    level + 1,
                    value + profits[level],
                    tuple(residual[i] - weights[i][level] for i in range(d)),
                    (level, chain),
                ))

        chosen = [False] * instance.n
        while best_chain is not None:
            position, best_chain = best_chain
            chosen[items[position]] = True
        return DkpSolution.from_chosen(instance, chosen)

    def oracle(self, name: Union[str, DkpOracle]) -> Callable[[DkpInstance], DkpSolution]:
        return {
            DkpOracle.EXACT: self.solve_exact,
            DkpOracle.GREEDY: self.solve_greedy,
        }[DkpOracle(name)]

    def dc(
        self,
        instance: DkpInstance,
        oracle: Union[str, DkpOracle] = DkpOracle.EXACT,
        depth: int = 1,
    ) -> DcResult[DkpSolution]:
        """Chosen sets of both children, mapped back; z_dc = z_lt + z_rt."""
        return dc_solve(instance, self, self.oracle(oracle), depth)

    def recombine(
        self,
        instance: DkpInstance,
        pair: SplitPair[DkpInstance],
        left: DkpSolution,
        right: DkpSolution,
    ) -> DkpSolution:
        chosen = [False] * instance.n
        for child, parent in enumerate(pair.left_map):
            chosen[parent] = left.chosen[child]
        for child, parent in enumerate(pair.right_map):
            chosen[parent] = right.chosen[child]
        return DkpSolution.from_chosen(instance, chosen)

    def objective(self, solution: DkpSolution) -> float:
        return float(solution.value)

    def can_split(self, instance: DkpInstance) -> bool:
        return instance.n >= 2
