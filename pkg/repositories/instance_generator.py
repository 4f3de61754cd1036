from abc import ABC, abstractmethod
from models.binpacking import BppInstance
from models.errors import GenerationError
from models.experiment import GenSpec, ProblemKind, UINT64_MAX
from models.knapsack import DkpInstance
from models.tsp import TspInstance
from scipy.spatial.distance import cdist
from typing import Union
import numpy as np

Instance = Union[DkpInstance, BppInstance, TspInstance]

MAX_ATTEMPTS = 100
TIGHTNESS_TOLERANCE = 0.02
# 64-bit golden-ratio constant used to spread trial seeds.
SEED_STRIDE = 0x9E3779B97F4A7C15


def derive_seed(base_seed: int, trial_index: int) -> int:
    """Seed of trial `trial_index`, a pure function of the base seed."""
    return (base_seed ^ (trial_index * SEED_STRIDE)) & UINT64_MAX


def _rng(*entropy: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(list(entropy))))


class InstanceGenerator(ABC):
    @abstractmethod
    def generate(self, spec: GenSpec) -> Instance:
        pass

    @abstractmethod
    def gen_dkp(self, spec: GenSpec) -> DkpInstance:
        pass

    @abstractmethod
    def gen_bpp(self, spec: GenSpec) -> BppInstance:
        pass

    @abstractmethod
    def gen_tsp(self, spec: GenSpec) -> TspInstance:
        pass


class SeededInstanceGenerator(InstanceGenerator):
    """numpy PCG64 generators; equal specs give equal instances."""

    def generate(self, spec: GenSpec) -> Instance:
        if spec.problem == ProblemKind.DKP:
            return self.gen_dkp(spec)
        if spec.problem == ProblemKind.BPP:
            return self.gen_bpp(spec)
        return self.gen_tsp(spec)

    def gen_dkp(self, spec: GenSpec) -> DkpInstance:
        """
        Profits uniform on [1, N*D]. Each constraint draws a raw capacity on
        [1, N*D] and weights on [1, raw capacity]; the capacity is then set to
        max(max weight, round(t * total weight)). A constraint row whose
        tightness misses the target by more than 0.02, or that is not binding,
        is redrawn from the next derived seed.
        """
        if spec.problem != ProblemKind.DKP:
            raise ValueError(f"gen_dkp called with a {spec.problem.value} spec")
        n, d = spec.n, spec.d
        high = n * d
        profits = _rng(spec.seed, 0).integers(1, high, size=n, endpoint=True)

        weights = np.empty((d, n), dtype=np.int64)
        capacities = np.empty(d, dtype=np.int64)
        for i in range(d):
            for attempt in range(MAX_ATTEMPTS):
                rng = _rng(spec.seed, i + 1, attempt)
                c_raw = int(rng.integers(1, high, endpoint=True))
                row = rng.integers(1, c_raw, size=n, endpoint=True)
                total = int(row.sum())
                capacity = max(int(row.max()), int(np.rint(spec.tightness * total)))
                if total > capacity and abs(capacity / total - spec.tightness) <= TIGHTNESS_TOLERANCE:
                    weights[i], capacities[i] = row, capacity
                    break
            else:
                raise GenerationError(
                    f"no d-KP constraint with tightness {spec.tightness} +/- {TIGHTNESS_TOLERANCE} "
                    f"after {MAX_ATTEMPTS} attempts (N={n}, D={d}, seed={spec.seed})"
                )

        return DkpInstance(
            d=d,
            n=n,
            capacities=capacities.tolist(),
            profits=profits.tolist(),
            weights=weights.tolist(),
        )

    def gen_bpp(self, spec: GenSpec) -> BppInstance:
        """Uniform weights on (0, 1]."""
        if spec.problem != ProblemKind.BPP:
            raise ValueError(f"gen_bpp called with a {spec.problem.value} spec")
        # random() is on [0, 1); reflecting it excludes zero weights
        weights = 1.0 - _rng(spec.seed).random(spec.n)
        return BppInstance(weights=weights.tolist())

    def gen_tsp(self, spec: GenSpec) -> TspInstance:
        if not spec.problem.is_tsp:
            raise ValueError(f"gen_tsp called with a {spec.problem.value} spec")
        rng = _rng(spec.seed)
        n = spec.n

        if spec.problem == ProblemKind.TSP_MS:
            points = rng.random((n, 2))
            return TspInstance(n=n, dist=cdist(points, points).tolist(), symmetric=True, metric=True)

        if spec.problem == ProblemKind.TSP_MA:
            # clockwise arc length on the unit circle
            theta = rng.random(n) * 2.0 * np.pi
            dist = np.mod(theta[:, None] - theta[None, :], 2.0 * np.pi)
            return TspInstance(n=n, dist=dist.tolist(), symmetric=False, metric=True)

        upper = np.triu(rng.random((n, n)), k=1)
        return TspInstance(n=n, dist=(upper + upper.T).tolist(), symmetric=True, metric=False)
