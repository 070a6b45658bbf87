# Standard
from typing import Optional, Union

# Local
from dcode.base.record import RunRecord
from dcode.base.registry import get_baseline
from dcode.baselines.config import BaselineConfig
from dcode.problems.core import ContinuousProblem, TspInstance
from dcode.problems.rng import SeededRng
from dcode.utils import dcode_logger


def run_baseline(
    cfg: BaselineConfig,
    problem: Union[TspInstance, ContinuousProblem],
    rng: SeededRng,
    threads: int = 1,
) -> RunRecord:
    """Runs the registered baseline `cfg.algorithm_id` on `problem`"""
    solver = get_baseline(cfg.algorithm_id)(cfg.algorithm_id, cfg.resolved_params(), threads=threads)
    solver.check_problem(problem)
    record = solver.solve(problem, cfg.population, cfg.max_iterations, rng)
    dcode_logger.debug(
        "%s finished: best %.6g after %s evaluations in %.2fs",
        cfg.algorithm_id,
        record.best_cost,
        record.evaluations,
        record.wall_time,
    )
    return record


def iterations_to_converge(record: RunRecord, target: float, tolerance: float) -> Optional[int]:
    """First (1-based) iteration whose best cost is within `tolerance` above `target`, else None"""
    if tolerance <= 0:
        raise ValueError(f"tolerance must be positive, got {tolerance}")
    for t, cost in enumerate(record.best_cost_per_iteration, start=1):
        if cost <= target + tolerance:
            return t
    return None
