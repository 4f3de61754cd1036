"""
Service for the traveling salesman problem: vertex efficiency, the induced
subgraph split, greedy cycle merging, Held-Karp and a nearest-neighbour/2-opt
heuristic.
"""

from models.divide_and_conquer import DcResult, SplitPair
from models.errors import InstanceTooLargeError
from models.tsp import COST_TOLERANCE, TspInstance, TspOracle, Tour, VertexEfficiency
from service.dc_service import DivideAndConquerProblem, dc_solve
from typing import Callable, List, Optional, Sequence, Union
import numpy as np

DEFAULT_EXACT_LIMIT = 18


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= COST_TOLERANCE * max(1.0, abs(a), abs(b))


class TspService(DivideAndConquerProblem[TspInstance, Tour]):

    def __init__(self, exact_limit: int = DEFAULT_EXACT_LIMIT):
        self.exact_limit = exact_limit

    def efficiency(self, instance: TspInstance) -> VertexEfficiency:
        """g(u) = sum over v of d(u, v) + d(v, u); ascending, ties by index."""
        d = instance.matrix()
        g = d.sum(axis=1) + d.sum(axis=0)
        return VertexEfficiency(
            g=g.tolist(),
            order=[int(v) for v in np.argsort(g, kind="stable")],
        )

    def split(self, instance: TspInstance, order: Optional[Sequence[int]] = None) -> SplitPair[TspInstance]:
        """Induced subgraphs on odd and even positions of the efficiency order."""
        if instance.n < 6:
            raise ValueError(f"TSP split needs at least 6 vertices, got {instance.n}")
        order = list(order) if order is not None else self.efficiency(instance).order
        if sorted(order) != list(range(instance.n)):
            raise ValueError("order must be a permutation of the vertices")
        left_map, right_map = order[0::2], order[1::2]
        return SplitPair(
            left=self._induced(instance, left_map),
            right=self._induced(instance, right_map),
            left_map=left_map,
            right_map=right_map,
        )

    @staticmethod
    def _induced(instance: TspInstance, vertices: List[int]) -> TspInstance:
        d = instance.matrix()
        return TspInstance(
            n=len(vertices),
            dist=d[np.ix_(vertices, vertices)].tolist(),
            symmetric=instance.symmetric,
            metric=instance.metric,
        )

    @staticmethod
    def lift(tour: Tour, mapping: Sequence[int]) -> Tour:
        """Rename child vertices to parent vertices; cost is unchanged."""
        return Tour(order=[mapping[v] for v in tour.order], cost=tour.cost)

    @staticmethod
    def most_expensive_arc(instance: TspInstance, order: Sequence[int]) -> int:
        """Position i of the heaviest arc (order[i], order[i+1 mod n]); first on ties."""
        d = instance.matrix()
        idx = np.asarray(order, dtype=np.intp)
        return int(np.argmax(d[idx, np.roll(idx, -1)]))

    def merge(self, left: Tour, right: Tour, instance: TspInstance) -> Tour:
        """
        Greedy cycle merge of two parent-indexed tours: drop the heaviest arc
        (u_i, u_i+1) of the left tour and (v_j, v_j+1) of the right tour,
        then join with (u_i, v_j+1) and (v_j, u_i+1). Both orientations are kept.
        """
        left_set, right_set = set(left.order), set(right.order)
        if left_set & right_set:
            raise ValueError("tours to merge share vertices")
        if len(left_set) != len(left.order) or len(right_set) != len(right.order):
            raise ValueError("tours to merge repeat vertices")
        if left_set | right_set != set(range(instance.n)):
            raise ValueError("tours to merge do not cover every vertex")

        i = self.most_expensive_arc(instance, left.order)
        j = self.most_expensive_arc(instance, right.order)
        u, v = list(left.order), list(right.order)
        merged = u[: i + 1] + v[j + 1:] + v[: j + 1] + u[i + 1:]
        return Tour.from_order(instance, merged)

    def splice_cost(self, left: Tour, right: Tour, instance: TspInstance) -> float:
        """Merged cost predicted from the child costs and the exchanged arcs."""
        d = instance.matrix()
        u, v = left.order, right.order
        i = self.most_expensive_arc(instance, u)
        j = self.most_expensive_arc(instance, v)
        ui, ui1 = u[i], u[(i + 1) % len(u)]
        vj, vj1 = v[j], v[(j + 1) % len(v)]
        return float(
            left.cost + right.cost - d[ui, ui1] - d[vj, vj1] + d[ui, vj1] + d[vj, ui1]
        )

    def solve_exact(self, instance: TspInstance) -> Tour:
        """
        Held-Karp over subsets of the vertices 1..n-1, vectorized per subset size.

        g[S, j] is the cheapest path that starts at j, visits all of S and ends
        at vertex 0. The tour is rebuilt forwards from vertex 0, always taking
        the lowest vertex that stays optimal, which yields the lexicographically
        smallest optimal order.
        """
        n = instance.n
        if n > self.exact_limit:
            raise InstanceTooLargeError(n, self.exact_limit)

        d = instance.matrix()
        m = n - 1
        inner = d[1:, 1:]
        size = 1 << m
        g = np.full((size, m), np.inf)
        g[0, :] = d[1:, 0]

        masks = np.arange(size, dtype=np.int64)
        popcount = np.zeros(size, dtype=np.int64)
        for k in range(m):
            popcount += (masks >> k) & 1

        for p in range(1, m + 1):
            layer = masks[popcount == p]
            best = np.full((layer.size, m), np.inf)
            for k in range(m):
                bit = 1 << k
                has_k = (layer & bit) != 0
                sel = layer[has_k]
                if sel.size == 0:
                    continue
                # inner[j, k] + g[S - k, k], for every start j
                candidate = inner[:, k][None, :] + g[sel ^ bit, k][:, None]
                best[has_k] = np.minimum(best[has_k], candidate)
            g[layer] = best

        full = size - 1
        first = d[0, 1:] + g[full ^ (1 << np.arange(m)), np.arange(m)]
        optimum = float(first.min())
        current = int(next(j for j in range(m) if _close(first[j], optimum)))
        order = [0, current + 1]
        remaining = full ^ (1 << current)
        while remaining:
            target = g[remaining, current]
            for k in range(m):
                bit = 1 << k
                if remaining & bit and _close(inner[current, k] + g[remaining ^ bit, k], target):
                    break
            order.append(k + 1)
            remaining ^= 1 << k
            current = k
        return Tour.from_order(instance, order)

    def solve_heuristic(self, instance: TspInstance) -> Tour:
        """Nearest neighbour from vertex 0, then 2-opt when the instance is symmetric."""
        d = instance.matrix()
        order = self._nearest_neighbour(d)
        if instance.symmetric:
            order = self._two_opt(d, order)
        return Tour.from_order(instance, order.tolist())

    @staticmethod
    def _nearest_neighbour(d: np.ndarray) -> np.ndarray:
        n = d.shape[0]
        visited = np.zeros(n, dtype=bool)
        order = np.empty(n, dtype=np.intp)
        current = 0
        for step in range(n):
            order[step] = current
            visited[current] = True
            if step < n - 1:
                row = np.where(visited, np.inf, d[current])
                current = int(np.argmin(row))
        return order

    @staticmethod
    def _two_opt(d: np.ndarray, order: np.ndarray) -> np.ndarray:
        n = order.size
        tour = order.copy()
        eps = COST_TOLERANCE * max(1.0, float(d.max()))
        improved = True
        while improved:
            improved = False
            for i in range(n - 2):
                a, b = tour[i], tour[i + 1]
                js = np.arange(i + 2, n if i > 0 else n - 1)
                if js.size == 0:
                    continue
                c = tour[js]
                e = tour[(js + 1) % n]
                delta = d[a, c] + d[b, e] - d[a, b] - d[c, e]
                k = int(np.argmin(delta))
                if delta[k] < -eps:
                    j = int(js[k])
                    tour[i + 1: j + 1] = tour[i + 1: j + 1][::-1].copy()
                    improved = True
        return tour

    def oracle(self, name: Union[str, TspOracle]) -> Callable[[TspInstance], Tour]:
        return {
            TspOracle.EXACT: self.solve_exact,
            TspOracle.HEURISTIC: self.solve_heuristic,
        }[TspOracle(name)]

    def dc(
        self,
        instance: TspInstance,
        oracle: Union[str, TspOracle] = TspOracle.EXACT,
        depth: int = 1,
    ) -> DcResult[Tour]:
        return dc_solve(instance, self, self.oracle(oracle), depth)

    def recombine(
        self,
        instance: TspInstance,
        pair: SplitPair[TspInstance],
        left: Tour,
        right: Tour,
    ) -> Tour:
        return self.merge(self.lift(left, pair.left_map), self.lift(right, pair.right_map), instance)

    def objective(self, solution: Tour) -> float:
        return solution.cost

    def can_split(self, instance: TspInstance) -> bool:
        return instance.n >= 6

