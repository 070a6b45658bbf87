# Standard
from contextlib import contextmanager
from typing import Any, Dict, List, Optional
import argparse
import os
import sys

# Local
from dcode.advanced.clustering import clustered_candidates
from dcode.advanced.prescription import Constraint, PrescriptionDataset, olp_prescribe
from dcode.base.registry import get_baseline
from dcode.base.solver import TSP
from dcode.baselines.config import BaselineConfig
from dcode.baselines.runner import run_baseline
from dcode.bench.experiment import ExperimentSpec, run_experiment
from dcode.bench.metrics import solution_quality
from dcode.bench.reports import write_record_csv, write_report
from dcode.colony.engine import run_dco
from dcode.config import ConfigError, load_cli_config, read_json, validate_config
from dcode.problems.rng import CLUSTER_STREAM, SeededRng, side_rng
from dcode.problems.tsplib import load_tsplib
from dcode.simulation.allocation import DE_ADAPTIVE, STATIC, simulate, summary_row, write_summary
from dcode.simulation.scenarios import generate_scenario, scenario_names
from dcode.utils import dcode_logger, dump_json, resolve_threads

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INPUT = 2
EXIT_RUNTIME = 3
EXIT_INFEASIBLE = 4

DEFAULT_OUTPUT_DIR = "results"
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class DcodeArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors raised instead of exiting, so main() owns the exit code"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@contextmanager
def loading():
    """Turns failures to read or validate inputs into InputError"""
    try:
        yield
    except (OSError, ValueError) as e:
        raise InputError(str(e)) from e


def get_parser() -> argparse.ArgumentParser:
    parser = DcodeArgumentParser(prog="dcode", formatter_class=argparse.RawTextHelpFormatter)
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser("solve", help="Run the colony solver on a TSPLIB instance.")
    add_solve_args(solve)
    add_base_args(solve)

    bench = subparsers.add_parser("bench", help="Run a multi-seed experiment and write its tables.")
    add_bench_args(bench)
    add_base_args(bench)

    sim = subparsers.add_parser("simulate", help="Compare static and adaptive resource allocation.")
    add_simulate_args(sim)
    add_base_args(sim)

    prescribe = subparsers.add_parser("prescribe", help="Pick the best feasible record of a dataset.")
    add_prescribe_args(prescribe)
    add_base_args(prescribe, seeded=False)

    return parser


def add_base_args(parser: argparse.ArgumentParser, seeded: bool = True):
    group = parser.add_argument_group("base", "General command-line arguments")
    group.add_argument(
        "--output-dir",
        type=str,
        metavar="DIR",
        default=None,
        help=f"Directory for output files (default: {DEFAULT_OUTPUT_DIR}/<command>).",
    )
    group.add_argument(
        "--threads",
        type=int,
        default=None,
        help="Worker threads; falls back to $DCODE_THREADS, then the core count.",
    )
    if seeded:
        group.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Master random seed.")
    return group


def add_solve_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("solve", "Colony solver arguments")
    group.add_argument("--instance", type=str, required=True, metavar="FILE", help="TSPLIB file.")
    group.add_argument("--config", type=str, metavar="FILE", help="JSON config.")
    group.add_argument(
        "--algorithm",
        type=str,
        metavar="ID",
        help="TSP baseline to run with the config's `baseline` section instead of D-CODE.",
    )
    group.add_argument("--no-de", action="store_true", help="Run without the efficiency controller.")
    group.add_argument("--clusters", type=int, metavar="K", help="Restrict moves to cluster candidate lists.")
    group.add_argument("--best-known", type=str, metavar="CSV", help="name,cost file of optimal costs.")
    return group


def add_bench_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("bench", "Benchmark arguments")
    group.add_argument("--spec", type=str, metavar="FILE", help="Experiment JSON.")
    group.add_argument(
        "--config",
        type=str,
        metavar="FILE",
        help="JSON config whose `experiment` section runs when --spec is omitted.",
    )
    return group


def add_simulate_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("simulate", "Simulator arguments")
    group.add_argument(
        "--scenario",
        type=str,
        nargs="+",
        required=True,
        help="One or more of: high_demand, emergency, scalability.",
    )
    group.add_argument("--config", type=str, metavar="FILE", help="JSON config.")
    group.add_argument("--horizon", type=int, help="Timesteps, overrides the config.")
    group.add_argument("--tasks", type=int, help="Task count, overrides the config.")
    only = group.add_mutually_exclusive_group()
    only.add_argument("--static-only", action="store_true", help="Run only the static policy.")
    only.add_argument("--de-only", action="store_true", help="Run only the adaptive policy.")
    return group


def add_prescribe_args(parser: argparse.ArgumentParser):
    group = parser.add_argument_group("prescribe", "Prescription arguments")
    group.add_argument("--data", type=str, required=True, metavar="CSV", help="Records with an 'f' column.")
    group.add_argument(
        "--constraint",
        type=str,
        action="append",
        default=[],
        help="'<feature><op><value>', op one of < <= > >= == !=; repeatable.",
    )
    return group


def _output_dir(args: argparse.Namespace) -> str:
    return args.output_dir or os.path.join(DEFAULT_OUTPUT_DIR, args.command)


def _echo_config(output_dir: str, args: argparse.Namespace, config: Dict[str, Any]) -> None:
    """effective_config.json: the command line and the fully defaulted config it ran with"""
    cli_args = {k: v for k, v in sorted(vars(args).items()) if k != "threads"}
    dump_json({"args": cli_args, "config": config}, os.path.join(output_dir, "effective_config.json"))


def _baseline_config(cfg: BaselineConfig, algorithm_id: str) -> BaselineConfig:
    """The config's `baseline` section revalidated for `algorithm_id`, which must solve TSPs"""
    baseline = validate_config(
        BaselineConfig, {**cfg.model_dump(), "algorithm_id": algorithm_id}, "--algorithm"
    )
    if get_baseline(algorithm_id).PROBLEM_KIND != TSP:
        raise ValueError(f"--algorithm {algorithm_id} does not solve TSP instances")
    return baseline


def cmd_solve(args: argparse.Namespace) -> int:
    with loading():
        cfg = load_cli_config(args.config)
        instance = load_tsplib(args.instance, args.best_known)
        threads = resolve_threads(args.threads)
        rng = SeededRng(args.seed)
        if args.clusters is not None and args.clusters < 1:
            raise ValueError(f"--clusters must be at least 1, got {args.clusters}")
        if args.algorithm is not None:
            if args.no_de or args.clusters is not None:
                raise ValueError("--no-de and --clusters apply to D-CODE only, not --algorithm")
            cfg = cfg.model_copy(update={"baseline": _baseline_config(cfg.baseline, args.algorithm)})
        controller = None if args.no_de else cfg.de_controller.build(cfg.colony.max_iterations)

    if args.algorithm is not None:
        record = run_baseline(cfg.baseline, instance, rng, threads=threads)
    else:
        candidates = None
        if args.clusters is not None:
            candidates = clustered_candidates(instance, args.clusters, side_rng(rng, CLUSTER_STREAM))
        record = run_dco(instance, cfg.colony, controller, rng, candidates, threads=threads)

    summary = {
        "instance": instance.name,
        "algorithm": args.algorithm or "dcode",
        "best_cost": record.best_cost,
        "best_tour": list(record.best_tour.order),
        "evaluations": record.evaluations,
        "iterations": record.iterations_run,
        "resets": record.resets,
        "sq": None,
    }
    print(f"best cost: {record.best_cost:g}")
    if instance.best_known is not None:
        summary["sq"] = solution_quality(record.best_cost, instance.best_known)
        print(f"SQ: {summary['sq']:.2f}")
    print(f"wall time: {record.wall_time:.3f}s")

    output_dir = _output_dir(args)
    write_record_csv(record, os.path.join(output_dir, "record.csv"))
    dump_json(summary, os.path.join(output_dir, "summary.json"))
    _echo_config(output_dir, args, cfg.model_dump(mode="json"))
    return EXIT_OK


def _experiment_spec(args: argparse.Namespace) -> ExperimentSpec:
    """--spec when given, else the `experiment` section of --config"""
    if args.spec is not None:
        return validate_config(ExperimentSpec, read_json(args.spec), args.spec)
    if args.config is not None:
        spec = load_cli_config(args.config).experiment
        if spec is not None:
            return spec
        raise ValueError(f"{args.config}: no `experiment` section; pass --spec or add one")
    raise ValueError("bench needs --spec or a --config with an `experiment` section")


def cmd_bench(args: argparse.Namespace) -> int:
    with loading():
        spec = _experiment_spec(args)
        if args.output_dir:
            spec = spec.model_copy(update={"output_dir": args.output_dir})
        threads = resolve_threads(args.threads)

    report = run_experiment(spec, threads=threads)
    print(write_report(report, spec.output_dir))
    _echo_config(spec.output_dir, args, spec.model_dump(mode="json"))
    return EXIT_OK


def cmd_simulate(args: argparse.Namespace) -> int:
    with loading():
        unknown = [name for name in args.scenario if name not in scenario_names()]
        if unknown:
            raise ConfigError(
                "--scenario", "", f"unknown scenario {', '.join(unknown)}; valid scenarios: {', '.join(scenario_names())}"
            )
        cfg = load_cli_config(args.config)
        overrides = {}
        if args.horizon is not None:
            overrides["horizon"] = args.horizon
        if args.tasks is not None:
            overrides["n_tasks"] = args.tasks
        scenario_cfg = validate_config(
            type(cfg.scenario), {**cfg.scenario.model_dump(), **overrides}, "command line"
        )
        kinds = [STATIC] if args.static_only else [DE_ADAPTIVE] if args.de_only else [STATIC, DE_ADAPTIVE]
        policies = {kind: scenario_cfg.policy(kind) for kind in kinds}
        scenarios = [
            generate_scenario(
                name, scenario_cfg.horizon, scenario_cfg.n_tasks, SeededRng(args.seed), scenario_cfg.params
            )
            for name in args.scenario
        ]

    output_dir = _output_dir(args)
    rows = []
    for scenario in scenarios:
        traces = {kind: simulate(scenario, policy) for kind, policy in policies.items()}
        for kind, trace in traces.items():
            trace.to_csv(os.path.join(output_dir, scenario.name, f"trace_{kind}.csv"))
        row = summary_row(scenario.name, traces.get(STATIC), traces.get(DE_ADAPTIVE))
        rows.append(row)
        print(", ".join(f"{k}: {v}" for k, v in row.items()))

    summary = write_summary(rows, os.path.join(output_dir, "summary.json"))
    if "mean_gain" in summary and len(rows) > 1:
        print(f"mean gain: {summary['mean_gain']}")
    _echo_config(output_dir, args, {"scenario": scenario_cfg.model_dump(mode="json")})
    return EXIT_OK


def cmd_prescribe(args: argparse.Namespace) -> int:
    with loading():
        constraints = [Constraint.parse(text) for text in args.constraint]
        dataset = PrescriptionDataset.from_csv(args.data, constraints)
        result = olp_prescribe(dataset)

    if args.output_dir:
        dump_json(result.to_dict(), os.path.join(args.output_dir, "prescription.json"))
        _echo_config(args.output_dir, args, {"constraints": [str(c) for c in constraints]})
    if not result.feasible:
        print("infeasible: no record satisfies every constraint")
        return EXIT_INFEASIBLE
    features = ", ".join(f"{k}={v}" for k, v in result.x.items())
    print(f"record {result.index}: {features}")
    print(f"f: {result.f:g}")
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "bench": cmd_bench,
    "simulate": cmd_simulate,
    "prescribe": cmd_prescribe,
}


def main(argv: Optional[List[str]] = None) -> int:
    parser = get_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"dcode: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code or EXIT_OK

    try:
        return COMMANDS[args.command](args)
    except InputError as e:
        print(f"dcode: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as e:
        dcode_logger.debug("%s failed", args.command, exc_info=True)
        print(f"dcode: {args.command} failed: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
