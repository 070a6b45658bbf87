# Standard
from dataclasses import dataclass, field
from typing import Any, Dict, List, Literal, Optional, Tuple, Union
import os
import time

# Third Party
from pydantic import BaseModel, ConfigDict, Field, model_validator
from tqdm import tqdm

# Local
from dcode.advanced.clustering import clustered_candidates, default_cluster_count
from dcode.base.instance import Instance
from dcode.base.parallel import run_batch
from dcode.base.record import RunRecord
from dcode.baselines.config import BaselineConfig
from dcode.baselines.runner import iterations_to_converge, run_baseline
from dcode.bench import metrics
from dcode.colony.config import ColonyConfig
from dcode.colony.engine import run_dco
from dcode.efficiency.config import ControllerConfig
from dcode.problems.core import ContinuousProblem, TspInstance
from dcode.problems.functions import make_problem
from dcode.problems.generators import random_euclidean_instance
from dcode.problems.rng import CLUSTER_STREAM, INSTANCE_STREAM, SeededRng, side_rng
from dcode.problems.tsplib import load_best_known, load_tsplib
from dcode.utils import dcode_logger

DCO = "dco"


class ExperimentError(RuntimeError):
    def __init__(self, seed: int, algorithm: str, problem: str, cause: Exception) -> None:
        self.seed = seed
        self.algorithm = algorithm
        self.problem = problem
        super().__init__(f"Seed {seed} of '{algorithm}' on '{problem}' failed: {cause}")


class ProblemRef(BaseModel):
    """One workload: a TSPLIB file, a random Euclidean instance or a continuous benchmark"""

    model_config = ConfigDict(extra="forbid")

    kind: Literal["tsplib", "random", "continuous"]
    name: Optional[str] = None
    path: Optional[str] = Field(None, description="TSPLIB file, for kind 'tsplib'.")
    n: Optional[int] = Field(None, ge=3, description="City count, for kind 'random'.")
    instance_seed: int = Field(0, ge=0, description="Seed of the random instance itself.")
    objective: Optional[str] = Field(None, description="sphere, rosenbrock or rastrigin.")
    dim: Optional[int] = Field(None, ge=1)
    start: Optional[List[float]] = None
    best_known: Optional[float] = Field(None, gt=0)
    target: Optional[float] = Field(None, description="Cost counted as converged; defaults to the known minimum.")
    tolerance: float = Field(1e-6, gt=0)

    @model_validator(mode="after")
    def _check_kind(self) -> "ProblemRef":
        required = {"tsplib": ("path",), "random": ("n",), "continuous": ("objective", "dim")}[self.kind]
        missing = [key for key in required if getattr(self, key) is None]
        if missing:
            raise ValueError(f"Problem of kind '{self.kind}' needs {', '.join(missing)}")
        return self

    @property
    def label(self) -> str:
        if self.name:
            return self.name
        if self.kind == "tsplib":
            return os.path.splitext(os.path.basename(self.path))[0]
        if self.kind == "random":
            return f"rand{self.n}"
        return f"{self.objective}{self.dim}"

    def load(self, best_known_csv: Optional[str] = None) -> Union[TspInstance, ContinuousProblem]:
        if self.kind == "continuous":
            return make_problem(self.objective, self.dim, start=self.start)
        if self.kind == "tsplib":
            instance = load_tsplib(self.path, best_known_csv)
        else:
            instance = random_euclidean_instance(
                self.n, side_rng(SeededRng(self.instance_seed), INSTANCE_STREAM), name=self.label
            )
            if best_known_csv is not None:
                instance = instance.with_best_known(load_best_known(best_known_csv).get(self.label))
        if self.best_known is not None:
            instance = instance.with_best_known(self.best_known)
        return instance

    def convergence_target(self, problem: Union[TspInstance, ContinuousProblem]) -> Optional[float]:
        if self.target is not None:
            return self.target
        if isinstance(problem, ContinuousProblem):
            return problem.known_minimum[1]
        return problem.best_known


class AlgorithmSpec(BaseModel):
    """A column of the experiment: the colony solver (with or without the controller) or a baseline"""

    model_config = ConfigDict(extra="forbid")

    label: str
    algorithm: str = Field(DCO, description="'dco' or a registered baseline id.")
    colony: ColonyConfig = Field(default_factory=ColonyConfig)
    de_controller: ControllerConfig = Field(default_factory=ControllerConfig)
    clusters: Union[int, Literal["sqrt"], None] = Field(
        None, description="Cluster candidate lists with this many clusters, 'sqrt' for round(sqrt(n))."
    )
    population: Optional[int] = Field(None, ge=1, description="Baseline population.")
    params: Dict[str, float] = Field(default_factory=dict)

    def baseline_config(self, budget: int) -> BaselineConfig:
        return BaselineConfig(
            algorithm_id=self.algorithm,
            population=self.population if self.population is not None else self.colony.m,
            max_iterations=budget,
            params=self.params,
        )

    @model_validator(mode="after")
    def _check_baseline(self) -> "AlgorithmSpec":
        if self.algorithm != DCO:
            self.baseline_config(1)
        return self


class ExperimentSpec(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "experiment"
    table: Literal["solution_quality", "convergence", "efficiency"] = "solution_quality"
    problems: List[ProblemRef] = Field(..., min_length=1)
    algorithms: List[AlgorithmSpec] = Field(..., min_length=1)
    seeds: List[int] = Field(..., min_length=1)
    budget: int = Field(..., gt=0, description="Iteration budget of every algorithm.")
    compare: Optional[Tuple[str, str]] = Field(
        None, description="(candidate, baseline) labels; defaults to the first two algorithms."
    )
    convergence_window: int = Field(metrics.DEFAULT_CONVERGENCE_WINDOW, ge=1)
    convergence_epsilon: float = Field(metrics.DEFAULT_CONVERGENCE_EPSILON, gt=0)
    best_known_csv: Optional[str] = None
    output_dir: str = "results"

    @model_validator(mode="after")
    def _check_labels(self) -> "ExperimentSpec":
        labels = [a.label for a in self.algorithms]
        if len(set(labels)) != len(labels):
            raise ValueError(f"Algorithm labels must be unique, got {labels}")
        if any(not 0 <= s < 2**64 for s in self.seeds):
            raise ValueError("Seeds must be 64-bit unsigned integers")
        if self.table == "solution_quality":
            candidate, baseline = self.comparison()
            if candidate not in labels or baseline not in labels:
                raise ValueError(f"compare must name two of {labels}")
        return self

    def comparison(self) -> Tuple[str, str]:
        if self.compare is not None:
            return self.compare
        if len(self.algorithms) < 2:
            raise ValueError("A solution_quality table compares two algorithms")
        return self.algorithms[0].label, self.algorithms[1].label


@dataclass
class SeedResult:
    seed: int
    algorithm: str
    instance: str
    best_cost: float
    evaluations: int
    wall_s: float
    cr: Optional[int]
    iterations_to_target: Optional[int]
    sq: Optional[float] = None


@dataclass
class MetricsReport:
    spec: ExperimentSpec
    runs: List[SeedResult] = field(default_factory=list)
    reference_costs: Dict[str, float] = field(default_factory=dict)

    def select(self, instance: str, algorithm: str) -> List[SeedResult]:
        return [r for r in self.runs if r.instance == instance and r.algorithm == algorithm]

    def aggregate(self) -> Dict[str, Any]:
        """Per instance and algorithm: stats of every metric, plus the settings needed to audit them"""
        out: Dict[str, Any] = {
            "name": self.spec.name,
            "budget": self.spec.budget,
            "seeds": list(self.spec.seeds),
            "convergence_window": self.spec.convergence_window,
            "convergence_epsilon": self.spec.convergence_epsilon,
            "reference_costs": dict(self.reference_costs),
            "results": {},
        }
        for problem in self.spec.problems:
            per_algorithm = {}
            for alg in self.spec.algorithms:
                runs = self.select(problem.label, alg.label)
                per_algorithm[alg.label] = {
                    "best_cost": metrics.aggregate([r.best_cost for r in runs]),
                    "sq": metrics.aggregate([r.sq for r in runs]),
                    "cr": metrics.aggregate([r.cr for r in runs]),
                    "iterations_to_target": metrics.aggregate([r.iterations_to_target for r in runs]),
                    "evals": metrics.aggregate([r.evaluations for r in runs]),
                    "wall_s": metrics.aggregate([r.wall_s for r in runs]),
                }
            out["results"][problem.label] = per_algorithm
        return out


def _run_algorithm(
    alg: AlgorithmSpec,
    problem: Union[TspInstance, ContinuousProblem],
    budget: int,
    rng: SeededRng,
    threads: int,
) -> RunRecord:
    if alg.algorithm != DCO:
        return run_baseline(alg.baseline_config(budget), problem, rng, threads=threads)
    if not isinstance(problem, TspInstance):
        raise ValueError(f"Algorithm '{alg.label}' solves tsp problems, got a continuous problem")
    candidates = None
    if alg.clusters is not None:
        k = default_cluster_count(problem.n) if alg.clusters == "sqrt" else alg.clusters
        candidates = clustered_candidates(problem, k, side_rng(rng, CLUSTER_STREAM))
    cfg = alg.colony.model_copy(update={"max_iterations": budget})
    start_time = time.perf_counter()
    record = run_dco(problem, cfg, alg.de_controller.build(budget), rng, candidates, threads=threads)
    # clustering is part of the solve
    record.wall_time = time.perf_counter() - start_time
    return record


def _run_seed(
    spec: ExperimentSpec,
    ref: ProblemRef,
    problem: Union[TspInstance, ContinuousProblem],
    alg: AlgorithmSpec,
    seed: int,
    threads: int,
) -> SeedResult:
    try:
        record = _run_algorithm(alg, problem, spec.budget, SeededRng(seed), threads)
    except Exception as e:
        raise ExperimentError(seed, alg.label, ref.label, e) from e
    target = ref.convergence_target(problem)
    return SeedResult(
        seed=seed,
        algorithm=alg.label,
        instance=ref.label,
        best_cost=record.best_cost,
        evaluations=record.evaluations,
        wall_s=record.wall_time,
        cr=metrics.convergence_rate(record, spec.convergence_window, spec.convergence_epsilon),
        iterations_to_target=(
            iterations_to_converge(record, target, ref.tolerance) if target is not None else None
        ),
    )


def _fill_solution_quality(report: MetricsReport, problems: Dict[str, Any]) -> None:
    """SQ against the best-known cost, else against the best cost any run reached"""
    for label, problem in problems.items():
        if not isinstance(problem, TspInstance):
            continue
        runs = [r for r in report.runs if r.instance == label]
        reference = problem.best_known
        if reference is None:
            reference = min(r.best_cost for r in runs)
            report.reference_costs[label] = reference
        if reference <= 0:
            continue
        for r in runs:
            r.sq = metrics.solution_quality(r.best_cost, reference)


def run_experiment(spec: ExperimentSpec, threads: int = 1) -> MetricsReport:
    """Runs every (problem, algorithm, seed) combination and computes all metrics

    Seeds of one (problem, algorithm) pair fan out over `threads`; each seed's solver then
    runs single-threaded.
    """
    start_time = time.perf_counter()
    problems = {ref.label: ref.load(spec.best_known_csv) for ref in spec.problems}

    report = MetricsReport(spec)
    seed_threads = max(1, min(threads, len(spec.seeds)))
    solver_threads = 1 if seed_threads > 1 else threads
    pbar = tqdm(
        total=len(spec.problems) * len(spec.algorithms) * len(spec.seeds),
        desc=f"Running {spec.name}",
    )
    for ref in spec.problems:
        problem = problems[ref.label]
        for alg in spec.algorithms:
            inputs = [
                Instance(args=(spec, ref, problem, alg, seed, solver_threads), idx=i)
                for i, seed in enumerate(spec.seeds)
            ]
            run_batch(_run_seed, inputs, seed_threads)
            report.runs.extend(x.result for x in inputs)
            pbar.update(len(inputs))
    pbar.close()

    _fill_solution_quality(report, problems)
    dcode_logger.info(
        "Experiment %s: %s runs in %.2fs", spec.name, len(report.runs), time.perf_counter() - start_time
    )
    return report
