"""Writers for per-seed CSVs, aggregate JSON and the table-shaped summaries."""

# Standard
from typing import Any, List, Optional, Sequence, Tuple
import csv
import os

# Third Party
from pytablewriter import MarkdownTableWriter

# Local
from dcode.base.record import RunRecord
from dcode.bench.experiment import MetricsReport
from dcode.bench.metrics import relative_improvement
from dcode.utils import dcode_logger, dump_json

SEED_COLUMNS = ["seed", "algorithm", "instance", "best_cost", "sq", "cr", "evals", "wall_s"]


def _fmt(value: Any, digits: int = 6) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.{digits}f}"
    return str(value)


def _mean(values: Sequence[Optional[float]]) -> Optional[float]:
    present = [v for v in values if v is not None]
    return sum(present) / len(present) if present else None


def _round(value: Optional[float], digits: int = 1) -> Optional[float]:
    return None if value is None else round(value, digits)


def _open(path: str):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    return open(path, "w", encoding="utf-8", newline="")


def write_seed_csv(report: MetricsReport, path: str) -> None:
    with _open(path) as f:
        writer = csv.writer(f)
        writer.writerow(SEED_COLUMNS)
        for r in report.runs:
            writer.writerow(
                [
                    r.seed,
                    r.algorithm,
                    r.instance,
                    _fmt(r.best_cost),
                    _fmt(r.sq),
                    _fmt(r.cr),
                    r.evaluations,
                    _fmt(r.wall_s),
                ]
            )


def write_record_csv(record: RunRecord, path: str) -> None:
    """One row per iteration: best-so-far cost and, for the colony solver, the rho and m used"""
    with _open(path) as f:
        writer = csv.writer(f)
        writer.writerow(["iteration", "best_cost", "rho", "m"])
        for t, cost in enumerate(record.best_cost_per_iteration, start=1):
            rho, m = record.parameter_trace[t - 1] if t <= len(record.parameter_trace) else (None, None)
            writer.writerow([t, _fmt(cost), _fmt(rho), _fmt(m)])


def solution_quality_table(report: MetricsReport) -> Tuple[List[str], List[List[Any]]]:
    candidate, baseline = report.spec.comparison()
    headers = [
        "instance",
        "sq_candidate",
        "sq_baseline",
        "runtime_candidate",
        "runtime_baseline",
        "relative_improvement",
    ]
    rows = []
    for problem in report.spec.problems:
        cand = report.select(problem.label, candidate)
        base = report.select(problem.label, baseline)
        sq_c, sq_b = _mean([r.sq for r in cand]), _mean([r.sq for r in base])
        improvement = (
            relative_improvement(sq_c, sq_b) if sq_c is not None and sq_b is not None else None
        )
        rows.append(
            [
                problem.label,
                _round(sq_c, 2),
                _round(sq_b, 2),
                _round(_mean([r.wall_s for r in cand]), 3),
                _round(_mean([r.wall_s for r in base]), 3),
                _round(improvement),
            ]
        )
    return headers, rows


def convergence_table(report: MetricsReport) -> Tuple[List[str], List[List[Any]]]:
    headers = ["problem", "algorithm", "avg_iterations_to_converge", "converged_runs"]
    rows = []
    for problem in report.spec.problems:
        for alg in report.spec.algorithms:
            runs = report.select(problem.label, alg.label)
            hits = [r.iterations_to_target for r in runs if r.iterations_to_target is not None]
            rows.append(
                [problem.label, alg.label, _round(_mean(hits)), f"{len(hits)}/{len(runs)}"]
            )
    return headers, rows


def efficiency_table(report: MetricsReport) -> Tuple[List[str], List[List[Any]]]:
    labels = [alg.label for alg in report.spec.algorithms]
    headers = ["workload"] + [f"{label}_wall_s" for label in labels] + [f"{label}_sq" for label in labels]
    rows = []
    for problem in report.spec.problems:
        walls = [_round(_mean([r.wall_s for r in report.select(problem.label, label)]), 3) for label in labels]
        sqs = [_round(_mean([r.sq for r in report.select(problem.label, label)]), 2) for label in labels]
        rows.append([problem.label] + walls + sqs)
    return headers, rows


TABLES = {
    "solution_quality": solution_quality_table,
    "convergence": convergence_table,
    "efficiency": efficiency_table,
}


def render_markdown(name: str, headers: List[str], rows: List[List[Any]]) -> str:
    writer = MarkdownTableWriter(table_name=name, headers=headers, value_matrix=rows, margin=1)
    return writer.dumps()


def write_table(headers: List[str], rows: List[List[Any]], path: str) -> None:
    with _open(path) as f:
        writer = csv.writer(f)
        writer.writerow(headers)
        for row in rows:
            writer.writerow([_fmt(v) if v is None else v for v in row])


def write_report(report: MetricsReport, output_dir: str) -> str:
    """Writes seeds.csv, aggregate.json, table.csv and table.md; returns the markdown table"""
    write_seed_csv(report, os.path.join(output_dir, "seeds.csv"))
    dump_json(report.aggregate(), os.path.join(output_dir, "aggregate.json"))
    headers, rows = TABLES[report.spec.table](report)
    write_table(headers, rows, os.path.join(output_dir, "table.csv"))
    markdown = render_markdown(report.spec.name, headers, rows)
    with open(os.path.join(output_dir, "table.md"), "w", encoding="utf-8") as f:
        f.write(markdown)
    dcode_logger.info("Wrote %s report to %s", report.spec.table, output_dir)
    return markdown
