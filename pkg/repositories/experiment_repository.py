from abc import ABC, abstractmethod
from models.database import Experiment, ExperimentStatus, Trial
from models.errors import ExperimentNotFoundError
from models.experiment import ExperimentCell, ExperimentSpec, TrialResult
from sqlalchemy.orm import Session
from typing import Dict, List, Optional
from datetime import datetime
import uuid


def trial_to_result(trial: Trial) -> TrialResult:
    return TrialResult(
        cell=ExperimentCell(n=trial.n, d=trial.d, tightness=trial.tightness, oracle=trial.oracle),
        trial_index=trial.trial_index,
        seed=int(trial.seed),
        z_full=trial.z_full,
        z_dc=trial.z_dc,
        t_full=trial.t_full,
        t_dc=trial.t_dc,
        s_f=trial.s_f,
        t_f=trial.t_f,
    )


def result_to_trial(experiment_id: str, result: TrialResult) -> Trial:
    return Trial(
        experiment_id=experiment_id,
        n=result.cell.n,
        d=result.cell.d,
        tightness=result.cell.tightness,
        oracle=result.cell.oracle,
        trial_index=result.trial_index,
        seed=str(result.seed),
        z_full=result.z_full,
        z_dc=result.z_dc,
        t_full=result.t_full,
        t_dc=result.t_dc,
        s_f=result.s_f,
        t_f=result.t_f,
    )


class ExperimentRepository(ABC):
    @abstractmethod
    def create_experiment(self, spec: ExperimentSpec) -> Experiment:
        pass

    @abstractmethod
    def update_status(self, experiment_id: str, status: ExperimentStatus) -> Experiment:
        pass

    @abstractmethod
    def record_pilot(self, experiment_id: str, variance: float, recommended_trials: int) -> Experiment:
        """Store the pilot S_f variance and the trial count it implies."""
        pass

    @abstractmethod
    def update_trials_per_cell(self, experiment_id: str, trials: int) -> Experiment:
        pass

    @abstractmethod
    def add_trials(self, experiment_id: str, results: List[TrialResult]) -> None:
        pass

    @abstractmethod
    def list_trials(self, experiment_id: str) -> List[TrialResult]:
        """Trials ordered by cell insertion, then trial index."""
        pass

    @abstractmethod
    def get_experiment(self, experiment_id: str) -> Optional[Experiment]:
        pass

    @abstractmethod
    def latest_experiment(self) -> Optional[Experiment]:
        pass

    @abstractmethod
    def list_experiment_ids(self) -> List[str]:
        pass


class ExperimentRepositoryDB(ExperimentRepository):
    """SQLAlchemy-based experiment repository (SQLite by default)."""

    def __init__(self, db: Session):
        self.db = db

    def create_experiment(self, spec: ExperimentSpec) -> Experiment:
        """Create a new experiment record in Processing status."""
        experiment = Experiment(
            experiment_id=str(uuid.uuid4()),
            status=ExperimentStatus.PROCESSING,
            problem=spec.problem.value,
            base_seed=str(spec.base_seed),
            trials_per_cell=spec.trials,
            spec_json=spec.model_dump_json(),
        )
        self.db.add(experiment)
        self.db.commit()
        self.db.refresh(experiment)
        return experiment

    def _require(self, experiment_id: str) -> Experiment:
        experiment = self.get_experiment(experiment_id)
        if not experiment:
            raise ExperimentNotFoundError(f"Experiment {experiment_id} not found")
        return experiment

    def update_status(self, experiment_id: str, status: ExperimentStatus) -> Experiment:
        experiment = self._require(experiment_id)
        experiment.status = status
        self.db.commit()
        self.db.refresh(experiment)
        return experiment

    def record_pilot(self, experiment_id: str, variance: float, recommended_trials: int) -> Experiment:
        experiment = self._require(experiment_id)
        experiment.pilot_variance = variance
        experiment.recommended_trials = recommended_trials
        self.db.commit()
        self.db.refresh(experiment)
        return experiment

    def update_trials_per_cell(self, experiment_id: str, trials: int) -> Experiment:
        experiment = self._require(experiment_id)
        experiment.trials_per_cell = trials
        self.db.commit()
        self.db.refresh(experiment)
        return experiment

    def add_trials(self, experiment_id: str, results: List[TrialResult]) -> None:
        self._require(experiment_id)
        self.db.add_all([result_to_trial(experiment_id, r) for r in results])
        self.db.commit()

    def list_trials(self, experiment_id: str) -> List[TrialResult]:
        self._require(experiment_id)
        trials = (
            self.db.query(Trial)
            .filter(Trial.experiment_id == experiment_id)
            .order_by(Trial.id)
            .all()
        )
        return [trial_to_result(t) for t in trials]

    def get_experiment(self, experiment_id: str) -> Optional[Experiment]:
        return self.db.query(Experiment).filter(Experiment.experiment_id == experiment_id).first()

    def latest_experiment(self) -> Optional[Experiment]:
        return self.db.query(Experiment).order_by(Experiment.created_at.desc()).first()

    def list_experiment_ids(self) -> List[str]:
        experiments = self.db.query(Experiment.experiment_id).order_by(Experiment.created_at).all()
        return [e.experiment_id for e in experiments]


class ExperimentRepositoryMock(ExperimentRepository):
    """In-memory repository for tests."""

    def __init__(self):
        self.experiments: Dict[str, Experiment] = {}
        self.trials: Dict[str, List[TrialResult]] = {}

    def create_experiment(self, spec: ExperimentSpec) -> Experiment:
        experiment = Experiment(
            experiment_id=str(uuid.uuid4()),
            created_at=datetime.utcnow(),
            status=ExperimentStatus.PROCESSING,
            problem=spec.problem.value,
            base_seed=str(spec.base_seed),
            trials_per_cell=spec.trials,
            spec_json=spec.model_dump_json(),
        )
        self.experiments[experiment.experiment_id] = experiment
        self.trials[experiment.experiment_id] = []
        return experiment

    def _require(self, experiment_id: str) -> Experiment:
        if experiment_id not in self.experiments:
            raise ExperimentNotFoundError(f"Experiment {experiment_id} not found")
        return self.experiments[experiment_id]

    def update_status(self, experiment_id: str, status: ExperimentStatus) -> Experiment:
        experiment = self._require(experiment_id)
        experiment.status = status
        return experiment

    def record_pilot(self, experiment_id: str, variance: float, recommended_trials: int) -> Experiment:
        experiment = self._require(experiment_id)
        experiment.pilot_variance = variance
        experiment.recommended_trials = recommended_trials
        return experiment

    def update_trials_per_cell(self, experiment_id: str, trials: int) -> Experiment:
        experiment = self._require(experiment_id)
        experiment.trials_per_cell = trials
        return experiment

    def add_trials(self, experiment_id: str, results: List[TrialResult]) -> None:
        self._require(experiment_id)
        self.trials[experiment_id].extend(results)

    def list_trials(self, experiment_id: str) -> List[TrialResult]:
        self._require(experiment_id)
        return list(self.trials[experiment_id])

    def get_experiment(self, experiment_id: str) -> Optional[Experiment]:
        return self.experiments.get(experiment_id)

    def latest_experiment(self) -> Optional[Experiment]:
        if not self.experiments:
            return None
        return list(self.experiments.values())[-1]

    def list_experiment_ids(self) -> List[str]:
        return list(self.experiments)
