"""
Experiment orchestration: feasibility checks, optional pilot sample, trial
execution (in process or on the RQ queue), persistence and aggregation.
"""

from abc import ABC, abstractmethod
from models.database import ExperimentStatus
from models.errors import ExperimentNotFoundError, InfeasibleSpecError
from models.experiment import (
    ExperimentCell,
    ExperimentReport,
    ExperimentSpec,
    ReportRow,
    TrialResult,
)
from repositories.experiment_repository import ExperimentRepository
from service.stats_service import bernoulli_trials, summarize
from typing import Dict, List, Optional, Sequence, Tuple
from workers.experiment_worker import run_cell_trials
import logging
import os
import time

logger = logging.getLogger(__name__)

MIN_SPLIT_SIZE = 2


class TrialRunner(ABC):
    @abstractmethod
    def run(
        self,
        spec: ExperimentSpec,
        cells: Sequence[ExperimentCell],
        trial_indices: Sequence[int],
    ) -> List[List[TrialResult]]:
        """Results per cell, in the order of `cells`."""
        pass


class InProcessTrialRunner(TrialRunner):
    def run(self, spec, cells, trial_indices):
        spec_json = spec.model_dump_json()
        results = []
        for cell in cells:
            logger.info("[Experiment] Cell %s: %d trials", cell.label, len(trial_indices))
            raw = run_cell_trials(spec_json, cell.model_dump_json(), list(trial_indices))
            results.append([TrialResult.model_validate_json(r) for r in raw])
        return results


class QueueTrialRunner(TrialRunner):
    """One RQ job per cell; the jobs run on `rq worker dc_trials` processes."""

    def __init__(self, queue, poll_seconds: Optional[float] = None, job_timeout: Optional[str] = None):
        self.queue = queue
        self.poll_seconds = poll_seconds or float(os.getenv("DCOPT_QUEUE_POLL_SECONDS", "0.5"))
        self.job_timeout = job_timeout or os.getenv("DCOPT_JOB_TIMEOUT", "30m")

    def run(self, spec, cells, trial_indices):
        spec_json = spec.model_dump_json()
        jobs = []
        for cell in cells:
            job = self.queue.enqueue(
                run_cell_trials,
                spec_json,
                cell.model_dump_json(),
                list(trial_indices),
                job_timeout=self.job_timeout,
            )
            logger.info("[Queue] Enqueued job %s for cell %s", job.id, cell.label)
            jobs.append(job)

        results = []
        for cell, job in zip(cells, jobs):
            while True:
                if job.is_finished:
                    results.append([TrialResult.model_validate_json(r) for r in job.return_value()])
                    break
                if job.is_failed:
                    raise RuntimeError(f"Job {job.id} for cell {cell.label} failed: {job.exc_info}")
                time.sleep(self.poll_seconds)
            logger.info("[Queue] Job %s finished", job.id)
        return results


def build_report(
    spec: ExperimentSpec,
    results: Sequence[TrialResult],
    pilot_variance: Optional[float] = None,
    recommended_trials: Optional[int] = None,
) -> ExperimentReport:
    """
    Aggregate trial results per cell. Every cell must hold exactly the trial
    indices 0..k-1; values are sorted by trial index before summarizing, so
    the report does not depend on completion order.
    """
    by_cell: Dict[ExperimentCell, List[TrialResult]] = {cell: [] for cell in spec.cells()}
    for result in results:
        if result.cell not in by_cell:
            raise ValueError(f"trial for unknown cell {result.cell.label}")
        by_cell[result.cell].append(result)

    rows = []
    expected = list(range(spec.trials))
    for cell, trials in by_cell.items():
        trials = sorted(trials, key=lambda t: t.trial_index)
        if [t.trial_index for t in trials] != expected:
            raise ValueError(
                f"cell {cell.label} holds {len(trials)} trials, expected indices 0..{spec.trials - 1}"
            )
        rows.append(ReportRow(
            problem=spec.problem,
            cell=cell,
            trials=len(trials),
            base_seed=spec.base_seed,
            s_f=summarize([t.s_f for t in trials]),
            t_f=summarize([t.t_f for t in trials]),
        ))
    return ExperimentReport(
        problem=spec.problem,
        base_seed=spec.base_seed,
        trials=spec.trials,
        rows=rows,
        pilot_variance=pilot_variance,
        recommended_trials=recommended_trials,
    )


class ExperimentService:
    def __init__(self, repository: ExperimentRepository, runner: TrialRunner, tsp_exact_limit: int):
        self.repository = repository
        self.runner = runner
        self.tsp_exact_limit = tsp_exact_limit

    def check_feasible(self, spec: ExperimentSpec) -> None:
        """Reject specs whose sizes cannot be split or whose oracle cannot handle them."""
        smallest = min(spec.n_values)
        if smallest < MIN_SPLIT_SIZE:
            raise InfeasibleSpecError(
                f"{spec.problem.value} D&C needs N >= {MIN_SPLIT_SIZE}, spec asks for N = {smallest}"
            )
        largest = max(spec.n_values)
        if spec.problem.is_tsp and "exact" in spec.oracles and largest > self.tsp_exact_limit:
            raise InfeasibleSpecError(
                f"exact TSP oracle is limited to N <= {self.tsp_exact_limit} "
                f"(DCOPT_TSP_EXACT_LIMIT), spec asks for N = {largest}"
            )

    def pilot_variance(self, spec: ExperimentSpec) -> float:
        """Largest S_f variance over all cells of a `pilot`-trial sample."""
        pilot_spec = spec.model_copy(update={"trials": spec.pilot})
        per_cell = self.runner.run(pilot_spec, pilot_spec.cells(), range(spec.pilot))
        return max(summarize([t.s_f for t in trials]).variance for trials in per_cell)

    def run_experiment(self, spec: ExperimentSpec) -> Tuple[str, ExperimentReport]:
        self.check_feasible(spec)
        experiment = self.repository.create_experiment(spec)
        experiment_id = experiment.experiment_id
        logger.info("[Experiment] Created experiment %s (%s, %d cells)", experiment_id, spec.problem.value, len(spec.cells()))

        try:
            variance, recommended = None, None
            if spec.pilot:
                variance = self.pilot_variance(spec)
                recommended = bernoulli_trials(variance)
                self.repository.record_pilot(experiment_id, variance, recommended)
                logger.info("[Experiment] Pilot S_f variance %.6g -> recommended k = %d", variance, recommended)
                if spec.auto_k and recommended > spec.trials:
                    spec = spec.model_copy(update={"trials": recommended})
                    self.repository.update_trials_per_cell(experiment_id, recommended)
                    logger.info("[Experiment] Raising k to %d", recommended)

            cells = spec.cells()
            per_cell = self.runner.run(spec, cells, range(spec.trials))
            for trials in per_cell:
                self.repository.add_trials(experiment_id, trials)

            report = build_report(spec, [t for trials in per_cell for t in trials], variance, recommended)
            self.repository.update_status(experiment_id, ExperimentStatus.READY)
            logger.info("[Experiment] Experiment %s ready", experiment_id)
            return experiment_id, report

        except Exception as e:
            logger.error("[Experiment] Experiment %s failed: %s", experiment_id, e)
            try:
                self.repository.update_status(experiment_id, ExperimentStatus.FAILED)
            except Exception as db_error:
                logger.error("[Experiment] Failed to update experiment status: %s", db_error)
            raise

    def load_report(self, experiment_id: Optional[str] = None) -> ExperimentReport:
        """Rebuild the report of a stored experiment (the latest one by default)."""
        if experiment_id:
            experiment = self.repository.get_experiment(experiment_id)
        else:
            experiment = self.repository.latest_experiment()
        if not experiment:
            raise ExperimentNotFoundError(f"Experiment {experiment_id or '(latest)'} not found")
        if experiment.status != ExperimentStatus.READY:
            raise ExperimentNotFoundError(f"Experiment {experiment.experiment_id} is {experiment.status.value}")

        spec = ExperimentSpec.model_validate_json(experiment.spec_json)
        spec = spec.model_copy(update={"trials": experiment.trials_per_cell})
        return build_report(
            spec,
            self.repository.list_trials(experiment.experiment_id),
            experiment.pilot_variance,
            experiment.recommended_trials,
        )
