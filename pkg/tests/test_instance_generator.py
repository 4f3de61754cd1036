from models.errors import GenerationError
from models.experiment import GenSpec, ProblemKind, UINT64_MAX
from repositories.instance_generator import TIGHTNESS_TOLERANCE, derive_seed
import numpy as np
import pytest


def test_same_spec_same_instance(generator):
    for problem in ProblemKind:
        spec = GenSpec(problem=problem, n=12, d=3, tightness=0.5, seed=1234)
        assert generator.generate(spec) == generator.generate(spec)


def test_different_seeds_differ(generator):
    a = generator.generate(GenSpec(problem=ProblemKind.BPP, n=20, seed=1))
    b = generator.generate(GenSpec(problem=ProblemKind.BPP, n=20, seed=2))
    assert a != b


@pytest.mark.parametrize("tightness", [0.25, 0.5, 0.75])
@pytest.mark.parametrize("n", [6, 10, 20, 50])
@pytest.mark.parametrize("d", [2, 4, 6])
def test_dkp_tightness_and_hypothesis(generator, knapsack, n, d, tightness):
    for seed in range(5):
        instance = generator.gen_dkp(GenSpec(problem=ProblemKind.DKP, n=n, d=d, tightness=tightness, seed=seed))
        assert instance.n == n and instance.d == d
        assert instance.satisfies_hypothesis()
        for t in knapsack.tightness(instance):
            assert abs(t - tightness) <= TIGHTNESS_TOLERANCE + 1e-12
        assert all(1 <= p <= n * d for p in instance.profits)


def test_dkp_gives_up_when_tightness_is_unreachable(generator):
    # with two items the larger weight alone is at least half the total
    with pytest.raises(GenerationError):
        generator.gen_dkp(GenSpec(problem=ProblemKind.DKP, n=2, d=1, tightness=0.05, seed=0))


def test_bpp_weights_are_uniform_on_unit_interval(generator):
    instance = generator.gen_bpp(GenSpec(problem=ProblemKind.BPP, n=20000, seed=7))
    weights = np.asarray(instance.weights)
    assert np.all((weights > 0.0) & (weights <= 1.0))
    assert weights.mean() == pytest.approx(0.5, abs=0.01)


def test_metric_symmetric_instances(generator):
    instance = generator.gen_tsp(GenSpec(problem=ProblemKind.TSP_MS, n=20, seed=5))
    assert instance.symmetric and instance.metric
    assert instance.is_metric()
    d = instance.matrix()
    assert np.all(d <= np.sqrt(2.0))


def test_non_metric_symmetric_instances(generator):
    instance = generator.gen_tsp(GenSpec(problem=ProblemKind.TSP_NMS, n=20, seed=5))
    assert instance.symmetric and not instance.metric
    assert not instance.is_metric()
    d = instance.matrix()
    assert np.array_equal(d, d.T)


def test_arc_instances_are_asymmetric_and_metric(generator):
    instance = generator.gen_tsp(GenSpec(problem=ProblemKind.TSP_MA, n=15, seed=5))
    assert not instance.symmetric and instance.metric
    assert instance.is_metric(tolerance=1e-9)
    d = instance.matrix()
    off = ~np.eye(15, dtype=bool)
    assert np.allclose((d + d.T)[off], 2.0 * np.pi)


def test_generator_rejects_mismatched_problem(generator):
    with pytest.raises(ValueError):
        generator.gen_dkp(GenSpec(problem=ProblemKind.BPP, n=5))
    with pytest.raises(ValueError):
        generator.gen_tsp(GenSpec(problem=ProblemKind.DKP, n=5))


def test_derive_seed():
    assert derive_seed(99, 0) == 99
    seeds = {derive_seed(12345, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert all(0 <= s <= UINT64_MAX for s in seeds)
    assert derive_seed(UINT64_MAX, 3) == derive_seed(UINT64_MAX, 3)
