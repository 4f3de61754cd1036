from database.db_config import create_session, database_url_for
from models.database import ExperimentStatus
from models.errors import ExperimentNotFoundError
from models.experiment import ExperimentCell, ExperimentSpec, ProblemKind, TrialResult, UINT64_MAX
from repositories.experiment_repository import ExperimentRepositoryDB
import pytest


@pytest.fixture
def db():
    session = create_session("sqlite://")
    yield session
    session.close()


@pytest.fixture
def db_repository(db) -> ExperimentRepositoryDB:
    return ExperimentRepositoryDB(db)


def spec(seed: int = UINT64_MAX) -> ExperimentSpec:
    return ExperimentSpec(
        problem=ProblemKind.DKP,
        n_values=[6],
        d_values=[2],
        tightness_values=[0.5],
        trials=2,
        base_seed=seed,
    )


def result(index: int, cell: ExperimentCell) -> TrialResult:
    return TrialResult(
        cell=cell,
        trial_index=index,
        seed=UINT64_MAX - index,
        z_full=93.0,
        z_dc=24.0,
        t_full=0.002,
        t_dc=0.001,
        s_f=100 * 24 / 93,
        t_f=50.0,
    )


def test_create_and_fetch(db_repository):
    experiment = db_repository.create_experiment(spec())
    fetched = db_repository.get_experiment(experiment.experiment_id)
    assert fetched.status == ExperimentStatus.PROCESSING
    assert int(fetched.base_seed) == UINT64_MAX
    assert ExperimentSpec.model_validate_json(fetched.spec_json) == spec()


def test_trials_round_trip_with_large_seeds(db_repository):
    experiment = db_repository.create_experiment(spec())
    cell = spec().cells()[0]
    db_repository.add_trials(experiment.experiment_id, [result(0, cell), result(1, cell)])
    assert db_repository.list_trials(experiment.experiment_id) == [result(0, cell), result(1, cell)]


def test_status_pilot_and_trial_count_updates(db_repository):
    experiment_id = db_repository.create_experiment(spec()).experiment_id
    db_repository.record_pilot(experiment_id, 0.25, 385)
    db_repository.update_trials_per_cell(experiment_id, 385)
    db_repository.update_status(experiment_id, ExperimentStatus.READY)
    experiment = db_repository.get_experiment(experiment_id)
    assert experiment.status == ExperimentStatus.READY
    assert experiment.pilot_variance == 0.25
    assert experiment.recommended_trials == 385
    assert experiment.trials_per_cell == 385


def test_unknown_experiment(db_repository):
    assert db_repository.get_experiment("missing") is None
    with pytest.raises(ExperimentNotFoundError):
        db_repository.update_status("missing", ExperimentStatus.READY)
    with pytest.raises(ExperimentNotFoundError):
        db_repository.list_trials("missing")


def test_latest_and_listing(db_repository):
    assert db_repository.latest_experiment() is None
    first = db_repository.create_experiment(spec(1)).experiment_id
    second = db_repository.create_experiment(spec(2)).experiment_id
    assert db_repository.list_experiment_ids() == [first, second]
    assert db_repository.latest_experiment().experiment_id == second


def test_database_url_defaults_to_output_directory(monkeypatch, tmp_path):
    monkeypatch.delenv("DATABASE_URL", raising=False)
    assert database_url_for(str(tmp_path)) == f"sqlite:///{(tmp_path / 'experiment.db').as_posix()}"
    monkeypatch.setenv("DATABASE_URL", "sqlite://")
    assert database_url_for(str(tmp_path)) == "sqlite://"
