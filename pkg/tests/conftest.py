from itertools import permutations
from models.binpacking import BppInstance
from models.knapsack import DkpInstance
from models.tsp import TspInstance
from repositories.experiment_repository import ExperimentRepositoryMock
from repositories.instance_generator import SeededInstanceGenerator
from service.binpacking_service import BinPackingService
from service.knapsack_service import KnapsackService
from service.tsp_service import TspService
import numpy as np
import pytest

# Worked examples: a 6-item, 2-constraint knapsack, a 6-item bin packing
# instance and a 6-vertex symmetric TSP distance table.
DKP_EXAMPLE = dict(
    d=2,
    n=6,
    capacities=[16, 11],
    profits=[5, 11, 11, 71, 2, 2],
    weights=[[6, 7, 1, 7, 7, 4], [4, 1, 1, 6, 1, 8]],
)
# Item order pinned for the worked example; it differs from the
# efficiency order the coefficient formula produces.
DKP_PINNED_ORDER = [2, 1, 3, 0, 4, 5]

BPP_EXAMPLE = [0.5, 0.7, 0.25, 0.1, 0.85, 0.31]

TSP_EXAMPLE = [
    [0.00, 0.61, 0.10, 1.08, 0.46, 0.11],
    [0.61, 0.00, 0.53, 0.71, 0.17, 0.54],
    [0.10, 0.53, 0.00, 0.98, 0.39, 0.12],
    [1.08, 0.71, 0.98, 0.00, 0.83, 1.07],
    [0.46, 0.17, 0.39, 0.83, 0.00, 0.38],
    [0.11, 0.54, 0.12, 1.07, 0.38, 0.00],
]
TSP_PINNED_ORDER = [2, 4, 1, 5, 0, 3]


@pytest.fixture
def dkp_example() -> DkpInstance:
    return DkpInstance(**DKP_EXAMPLE)


@pytest.fixture
def bpp_example() -> BppInstance:
    return BppInstance(weights=BPP_EXAMPLE)


@pytest.fixture
def tsp_example() -> TspInstance:
    return TspInstance(n=6, dist=TSP_EXAMPLE, symmetric=True, metric=True)


@pytest.fixture
def knapsack() -> KnapsackService:
    return KnapsackService()


@pytest.fixture
def binpacking() -> BinPackingService:
    return BinPackingService()


@pytest.fixture
def tsp() -> TspService:
    return TspService()


@pytest.fixture
def generator() -> SeededInstanceGenerator:
    return SeededInstanceGenerator()


@pytest.fixture
def repository() -> ExperimentRepositoryMock:
    return ExperimentRepositoryMock()


def random_dkp(rng: np.random.Generator, n: int, d: int, flagged: bool = False) -> DkpInstance:
    """Small random instance; `flagged` shrinks capacities below some weights."""
    profits = rng.integers(1, 30, size=n, endpoint=True)
    weights = rng.integers(1, 12, size=(d, n), endpoint=True)
    if flagged:
        capacities = rng.integers(0, 12, size=d, endpoint=True)
    else:
        capacities = np.maximum(weights.max(axis=1), weights.sum(axis=1) // 2)
    return DkpInstance(
        d=d,
        n=n,
        capacities=capacities.tolist(),
        profits=profits.tolist(),
        weights=weights.tolist(),
    )


def brute_force_dkp(instance: DkpInstance) -> int:
    n = instance.n
    bits = (np.arange(1 << n)[:, None] >> np.arange(n)) & 1
    loads = bits @ np.asarray(instance.weights).T
    feasible = np.all(loads <= np.asarray(instance.capacities), axis=1)
    values = bits @ np.asarray(instance.profits)
    return int(values[feasible].max())


def brute_force_tsp(instance: TspInstance) -> float:
    d = instance.matrix()
    rest = np.array(list(permutations(range(1, instance.n))), dtype=np.intp)
    tours = np.hstack([np.zeros((rest.shape[0], 1), dtype=np.intp), rest])
    costs = d[tours, np.roll(tours, -1, axis=1)].sum(axis=1)
    return float(costs.min())
