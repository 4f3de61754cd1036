"""
One Monte-Carlo trial: generate an instance from the derived seed, solve it
fully and through divide-and-conquer, and compute the performance pair.
"""

from models.experiment import ExperimentCell, ExperimentSpec, ProblemKind, TrialResult
from repositories.instance_generator import InstanceGenerator, derive_seed
from service.binpacking_service import BinPackingService
from service.dc_service import DivideAndConquerProblem, dc_solve, timed
from service.knapsack_service import KnapsackService
from service.stats_service import perf_pair
from service.tsp_service import TspService
import time

# A solve can finish inside one clock tick; the fractions need positive times.
CLOCK_FLOOR = time.get_clock_info("perf_counter").resolution


class TrialService:
    def __init__(
        self,
        generator: InstanceGenerator,
        knapsack: KnapsackService,
        binpacking: BinPackingService,
        tsp: TspService,
    ):
        self.generator = generator
        self.knapsack = knapsack
        self.binpacking = binpacking
        self.tsp = tsp

    def problem_service(self, problem: ProblemKind) -> DivideAndConquerProblem:
        if problem == ProblemKind.DKP:
            return self.knapsack
        if problem == ProblemKind.BPP:
            return self.binpacking
        return self.tsp

    def run_trial(self, spec: ExperimentSpec, cell: ExperimentCell, trial_index: int) -> TrialResult:
        """Full solve and D&C solve run back-to-back on the same instance."""
        seed = derive_seed(spec.base_seed, trial_index)
        instance = self.generator.generate(spec.gen_spec(cell, seed))
        service = self.problem_service(spec.problem)
        oracle = service.oracle(cell.oracle)

        full = timed(oracle, instance)
        dc = dc_solve(instance, service, oracle, spec.depth)

        z_full = service.objective(full.solution)
        t_full = max(full.wall_time, CLOCK_FLOOR)
        t_dc = max(dc.t_dc, CLOCK_FLOOR)
        pair = perf_pair(spec.problem, z_full, dc.z_dc, t_full, t_dc)
        return TrialResult(
            cell=cell,
            trial_index=trial_index,
            seed=seed,
            z_full=z_full,
            z_dc=dc.z_dc,
            t_full=t_full,
            t_dc=t_dc,
            s_f=pair.s_f,
            t_f=pair.t_f,
        )
