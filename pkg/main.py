"""
Command-line entry point.

    generate <spec-file> <out>
    solve <instance> [--method full|dc] [--oracle NAME] [--depth K]
    experiment <spec-file|preset> --out <dir> [--queue]
    report <dir> --format csv|table|plot [--experiment ID] [--output PATH]
"""

from database.db_config import DB_FILENAME, create_session, database_url_for
from dependencies.solver_dependencies import (
    get_binpacking_service,
    get_experiment_repository,
    get_file_storage_service,
    get_instance_generator,
    get_instance_parser,
    get_knapsack_service,
    get_spec_file_parser,
    get_tsp_service,
    tsp_exact_limit,
)
from dotenv import load_dotenv
from models.binpacking import BppInstance
from models.errors import ExperimentNotFoundError
from models.experiment import ExperimentSpec, SolveSummary
from models.knapsack import DkpInstance
from service.dc_service import timed
from service.experiment_presets import PRESETS, get_preset, preset_names
from service.experiment_service import ExperimentService, InProcessTrialRunner, QueueTrialRunner
from service.report_service import ReportService, render_csv, render_plotdata, render_table
from sqlalchemy.exc import SQLAlchemyError
from typing import List, Optional
import argparse
import logging
import os
import sys

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2

RENDERERS = {"csv": render_csv, "table": render_table, "plot": render_plotdata}


def configure_logging() -> None:
    logging.basicConfig(
        level=os.getenv("LOG_LEVEL", "INFO").upper(),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcopt",
        description="Divide-and-conquer experiments on d-KP, bin packing and TSP",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="Generate one seeded instance")
    gen.add_argument("spec_file")
    gen.add_argument("out")

    solve = sub.add_parser("solve", help="Solve an instance file")
    solve.add_argument("instance")
    solve.add_argument("--method", choices=["full", "dc"], default="full")
    solve.add_argument("--oracle", default=None, help="exact|greedy (dkp), nfd|ffd|bfd (bpp), exact|heuristic (tsp)")
    solve.add_argument("--depth", type=int, default=1)

    exp = sub.add_parser("experiment", help="Run a Monte-Carlo experiment")
    exp.add_argument("spec", help=f"Spec file or preset ({', '.join(preset_names())})")
    exp.add_argument("--out", required=True)
    exp.add_argument("--queue", action="store_true", help="Run cells as RQ jobs")

    rep = sub.add_parser("report", help="Emit the report of a stored experiment")
    rep.add_argument("dir")
    rep.add_argument("--format", choices=sorted(RENDERERS), default="table")
    rep.add_argument("--experiment", default=None, help="Experiment id (latest by default)")
    rep.add_argument("--output", default=None, help="Write here instead of stdout")
    return parser


def cmd_generate(args: argparse.Namespace) -> int:
    spec_parser = get_spec_file_parser()
    spec = spec_parser.gen_spec(spec_parser.read_pairs(args.spec_file))
    instance = get_instance_generator().generate(spec)
    get_instance_parser().write(instance, args.out)
    logger.info("[CLI] Wrote %s instance (N=%d, seed=%d) to %s", spec.problem.value, spec.n, spec.seed, args.out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    instance = get_instance_parser().read(args.instance)
    if isinstance(instance, DkpInstance):
        service, problem, default_oracle = get_knapsack_service(), "dkp", "exact"
    elif isinstance(instance, BppInstance):
        service, problem, default_oracle = get_binpacking_service(), "bpp", "ffd"
    else:
        service, problem = get_tsp_service(), "tsp"
        default_oracle = "exact" if instance.n <= tsp_exact_limit() else "heuristic"
    oracle_name = args.oracle or default_oracle
    oracle = service.oracle(oracle_name)

    if args.method == "full":
        solve = timed(oracle, instance)
        summary = SolveSummary(
            problem=problem,
            n=instance.n,
            method="full",
            oracle=oracle_name,
            objective=service.objective(solve.solution),
            wall_time=solve.wall_time,
            solution=solve.solution.model_dump(),
        )
    else:
        result = service.dc(instance, oracle_name, args.depth)
        summary = SolveSummary(
            problem=problem,
            n=instance.n,
            method="dc",
            oracle=oracle_name,
            depth=args.depth,
            objective=result.z_dc,
            wall_time=result.t_dc,
            t_left=result.t_left,
            t_right=result.t_right,
            solution=result.combined.model_dump(),
        )
    print(summary.model_dump_json(indent=2))
    return EXIT_OK


def load_experiment_spec(source: str) -> ExperimentSpec:
    """A spec file path, or a preset name when no such file exists."""
    if not os.path.exists(source) and source in PRESETS:
        spec = get_preset(source)
        seed = os.getenv("DCOPT_SEED")
        if seed:
            spec = ExperimentSpec(**{**spec.model_dump(), "base_seed": int(seed, 0)})
        return spec
    spec_parser = get_spec_file_parser()
    return spec_parser.experiment_spec(spec_parser.read_pairs(source))


def cmd_experiment(args: argparse.Namespace) -> int:
    spec = load_experiment_spec(args.spec)
    os.makedirs(args.out, exist_ok=True)
    db = create_session(database_url_for(args.out))
    try:
        if args.queue:
            from rq_config.redis_config import get_trial_queue

            runner = QueueTrialRunner(get_trial_queue())
        else:
            runner = InProcessTrialRunner()
        service = ExperimentService(get_experiment_repository(db), runner, tsp_exact_limit())
        experiment_id, report = service.run_experiment(spec)
    finally:
        db.close()

    paths = ReportService(get_file_storage_service(args.out)).emit_all(report)
    logger.info("[CLI] Experiment %s done: %s", experiment_id, ", ".join(paths))
    print(experiment_id)
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    store = os.path.join(args.dir, DB_FILENAME)
    if not os.getenv("DATABASE_URL") and not os.path.isfile(store):
        raise ExperimentNotFoundError(f"No experiment found in {args.dir} ({store} does not exist)")
    db = create_session(database_url_for(args.dir))
    try:
        service = ExperimentService(get_experiment_repository(db), InProcessTrialRunner(), tsp_exact_limit())
        report = service.load_report(args.experiment)
    finally:
        db.close()

    text = RENDERERS[args.format](report)
    if args.output:
        get_file_storage_service(args.dir).save_text(text, os.path.abspath(args.output))
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "generate": cmd_generate,
    "solve": cmd_solve,
    "experiment": cmd_experiment,
    "report": cmd_report,
}


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ValueError, LookupError, OSError, RuntimeError, SQLAlchemyError) as e:
        logger.debug("[CLI] %s failed", args.command, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
