"""
Monte-Carlo reproductions of reference S_f means. Slow; run with `pytest -m slow`.
"""

from models.experiment import ExperimentSpec, ProblemKind
from repositories.experiment_repository import ExperimentRepositoryMock
from service.experiment_service import ExperimentService, InProcessTrialRunner
import pytest

pytestmark = pytest.mark.slow


def report_rows(spec: ExperimentSpec) -> dict:
    service = ExperimentService(ExperimentRepositoryMock(), InProcessTrialRunner(), tsp_exact_limit=18)
    _, report = service.run_experiment(spec)
    return {(row.cell.n, row.cell.d, row.cell.oracle): row for row in report.rows}


def dkp_spec(n_values, tightness: float) -> ExperimentSpec:
    return ExperimentSpec(
        problem=ProblemKind.DKP,
        n_values=n_values,
        d_values=[2],
        tightness_values=[tightness],
        oracles=["exact"],
        trials=200,
        base_seed=2024,
    )


def test_knapsack_loose_capacities_and_size_trend():
    rows = report_rows(dkp_spec([6, 10, 20, 50], 0.25))
    means = [rows[(n, 2, "exact")].s_f.mean for n in (6, 10, 20, 50)]
    assert means[-1] == pytest.approx(96.36, abs=2.0)
    for smaller, larger in zip(means, means[1:]):
        assert larger >= smaller - 0.5


def test_knapsack_tight_capacities():
    rows = report_rows(dkp_spec([20], 0.75))
    assert rows[(20, 2, "exact")].s_f.mean == pytest.approx(97.46, abs=2.0)


def test_bin_packing_solution_and_time_fraction():
    spec = ExperimentSpec(
        problem=ProblemKind.BPP,
        n_values=[100],
        oracles=["nfd", "ffd"],
        trials=300,
        base_seed=2024,
    )
    rows = report_rows(spec)
    ffd, nfd = rows[(100, None, "ffd")], rows[(100, None, "nfd")]
    assert ffd.s_f.mean == pytest.approx(98.92, abs=0.5)
    assert nfd.s_f.mean == pytest.approx(99.83, abs=0.5)
    # timing is noisy; only the direction is checked
    assert ffd.t_f.mean < 70
    assert nfd.t_f.mean > 85


def test_metric_symmetric_tsp_solution_fraction():
    spec = ExperimentSpec(
        problem=ProblemKind.TSP_MS,
        n_values=[8],
        oracles=["exact"],
        trials=500,
        base_seed=2024,
    )
    assert report_rows(spec)[(8, None, "exact")].s_f.mean == pytest.approx(70.15, abs=5.0)
