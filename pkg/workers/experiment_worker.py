"""
RQ worker task for running the Monte-Carlo trials of one experiment cell.

The in-process runner calls the same function, so queued and local runs
produce identical trial records for equal seeds.
"""

from dependencies.solver_dependencies import get_trial_service
from models.experiment import ExperimentCell, ExperimentSpec
from typing import List, Sequence
import logging

logger = logging.getLogger(__name__)


def run_cell_trials(spec_json: str, cell_json: str, trial_indices: Sequence[int]) -> List[str]:
    """
    Run the given trials of one cell.

    Args:
        spec_json: ExperimentSpec as JSON
        cell_json: ExperimentCell as JSON
        trial_indices: Trial indices to run (seeds are derived from them)

    Returns:
        One TrialResult JSON document per trial, in the order given
    """
    spec = ExperimentSpec.model_validate_json(spec_json)
    cell = ExperimentCell.model_validate_json(cell_json)
    service = get_trial_service()

    logger.info("[Worker] Cell %s: running %d trials", cell.label, len(trial_indices))
    results = []
    try:
        for index in trial_indices:
            results.append(service.run_trial(spec, cell, index).model_dump_json())
    except Exception as e:
        logger.error("[Worker] Cell %s failed at trial %d: %s", cell.label, index, e)
        raise
    logger.info("[Worker] Cell %s finished", cell.label)
    return results
