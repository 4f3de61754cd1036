from functools import lru_cache
from repositories.experiment_repository import ExperimentRepository, ExperimentRepositoryDB
from repositories.instance_generator import InstanceGenerator, SeededInstanceGenerator
from repositories.instance_parser import InstanceParser, TextInstanceParser
from repositories.spec_file_parser import KeyValueSpecFileParser, SpecFileParser
from service.binpacking_service import BinPackingService
from service.file_storage_service import FileStorageService, LocalFileStorageService
from service.knapsack_service import KnapsackService
from service.trial_service import TrialService
from service.tsp_service import DEFAULT_EXACT_LIMIT, TspService
from sqlalchemy.orm import Session
import os


def tsp_exact_limit() -> int:
    return int(os.getenv("DCOPT_TSP_EXACT_LIMIT", str(DEFAULT_EXACT_LIMIT)))


@lru_cache()
def get_knapsack_service() -> KnapsackService:
    return KnapsackService()


@lru_cache()
def get_binpacking_service() -> BinPackingService:
    return BinPackingService()


@lru_cache()
def get_tsp_service() -> TspService:
    """Held-Karp limit comes from DCOPT_TSP_EXACT_LIMIT (default 18)."""
    return TspService(exact_limit=tsp_exact_limit())


@lru_cache()
def get_instance_generator() -> InstanceGenerator:
    return SeededInstanceGenerator()


@lru_cache()
def get_instance_parser() -> InstanceParser:
    return TextInstanceParser()


@lru_cache()
def get_spec_file_parser() -> SpecFileParser:
    return KeyValueSpecFileParser()


@lru_cache()
def get_trial_service() -> TrialService:
    return TrialService(
        generator=get_instance_generator(),
        knapsack=get_knapsack_service(),
        binpacking=get_binpacking_service(),
        tsp=get_tsp_service(),
    )


def get_experiment_repository(db: Session) -> ExperimentRepository:
    return ExperimentRepositoryDB(db)


def get_file_storage_service(root: str) -> FileStorageService:
    """Local storage rooted at an experiment output directory."""
    return LocalFileStorageService(root)
