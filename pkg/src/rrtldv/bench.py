"""Multi-trial experiments, summaries and CSV output.

Trial ``k`` of every algorithm arm uses seed ``base_seed + k`` so arms are
compared on common random numbers. Before the first solution an LDV arm and
the RRT* arm therefore grow identical trees.
"""
from __future__ import annotations

import csv
import logging
import math
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .geometry import HyperRect, World, segment_free
from .planner import PlanResult, Planner, PlannerParams, TraceRow
from .scenario import Scenario

log = logging.getLogger(__name__)

CSV_HEADER = ["trial", "seed", "algorithm", "iteration", "best_cost", "n_nodes", "n_xfail", "elapsed_ns"]
CHUNK = 100


@dataclass
class TrialOutcome:
    algorithm: str
    trial: int
    seed: int
    trace: list[TraceRow]
    best_path: list[np.ndarray] | None
    best_cost: float | None
    first_solution_iter: int | None
    wall_ns: int
    passage_hits: dict[str, bool] = field(default_factory=dict)
    result: PlanResult | None = None


@dataclass
class TrialRecord:
    trial: int
    seed: int
    algorithm: str
    iteration: int
    best_cost: float | None
    n_nodes: int
    n_xfail: int
    elapsed_ns: int


@dataclass
class ArmSummary:
    algorithm: str
    trials: int
    solved: int
    mean_cost: float | None
    std_cost: float | None
    success_rate: float | None  # fraction of trials whose best path uses a passage region
    mean_first_iter: float | None
    mean_wall_s: float


@dataclass
class ExperimentSummary:
    arms: list[ArmSummary]

    def arm(self, algorithm: str) -> ArmSummary:
        for a in self.arms:
            if a.algorithm == algorithm:
                return a
        raise KeyError(algorithm)


def passage_hit(path, region: HyperRect) -> bool:
    """True if any edge of ``path`` touches the closed box ``region``."""
    if not path:
        raise ValueError("empty path")
    w = World(HyperRect(region.lo - 1.0, region.hi + 1.0), (region,))
    if len(path) == 1:
        return region.contains(path[0])
    return any(not segment_free(a, b, w) for a, b in zip(path[:-1], path[1:]))


def run_trial(
    scenario: Scenario,
    params: PlannerParams,
    trial: int,
    time_budget: float | None = None,
    keep_result: bool = False,
) -> TrialOutcome:
    planner = Planner(scenario.world, scenario.start, scenario.goal, params)
    t0 = time.perf_counter_ns()
    if time_budget is None:
        planner.run(params.max_iter)
    else:
        # chunks keep every run a deterministic prefix of the seeded sequence
        deadline = t0 + int(time_budget * 1e9)
        while time.perf_counter_ns() < deadline:
            planner.run(CHUNK)
    wall = time.perf_counter_ns() - t0
    res = planner.result()
    hits = {}
    if res.best_path is not None:
        hits = {name: passage_hit(res.best_path, box) for name, box in scenario.passage_regions.items()}
    return TrialOutcome(
        params.name, trial, params.seed, res.trace, res.best_path, res.best_cost,
        res.first_solution_iter, wall, hits, res if keep_result else None,
    )


def _job(args):
    return run_trial(*args)


def worker_count(n_jobs: int) -> int:
    env = os.environ.get("LDV_THREADS")
    cap = int(env) if env else (os.cpu_count() or 1)
    return max(1, min(cap, n_jobs))


def run_experiment(
    scenario: Scenario,
    algorithms: list[PlannerParams],
    trials: int,
    base_seed: int,
    time_budget: float | None = None,
) -> tuple[list[TrialRecord], ExperimentSummary, list[TrialOutcome]]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    labels = [a.name for a in algorithms]
    if len(set(labels)) != len(labels):
        raise ValueError(f"algorithm labels must be unique, got {labels}")
    jobs = [
        (scenario, algo.with_(seed=base_seed + k), k, time_budget)
        for algo in algorithms
        for k in range(trials)
    ]
    n_workers = worker_count(len(jobs))
    log.info("running %d trials on %d worker(s)", len(jobs), n_workers)
    if n_workers == 1:
        outcomes = [_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            # map preserves submission order, so output is schedule independent
            outcomes = list(pool.map(_job, jobs))
    records = [
        TrialRecord(o.trial, o.seed, o.algorithm, row.iteration, row.best_cost, row.n_nodes, row.n_xfail, row.elapsed_ns)
        for o in outcomes
        for row in o.trace
    ]
    summary = summarize(outcomes, labels, trials, bool(scenario.passage_regions))
    return records, summary, outcomes


def summarize(outcomes: list[TrialOutcome], labels: list[str], trials: int, has_regions: bool = True) -> ExperimentSummary:
    arms = []
    for label in labels:
        runs = [o for o in outcomes if o.algorithm == label]
        assert len(runs) == trials
        costs = [o.best_cost for o in runs if o.best_cost is not None]
        firsts = [o.first_solution_iter for o in runs if o.first_solution_iter is not None]
        success = None
        if has_regions:
            success = sum(any(o.passage_hits.values()) for o in runs) / trials
        arms.append(
            ArmSummary(
                algorithm=label,
                trials=trials,
                solved=len(costs),
                mean_cost=statistics.fmean(costs) if costs else None,
                std_cost=statistics.stdev(costs) if len(costs) > 1 else (0.0 if costs else None),
                success_rate=success,
                mean_first_iter=statistics.fmean(firsts) if firsts else None,
                mean_wall_s=statistics.fmean(o.wall_ns for o in runs) / 1e9,
            )
        )
    return ExperimentSummary(arms)


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    return f"{x:.12g}"


def emit_csv(records: list[TrialRecord], path, timing: bool = False) -> None:
    """Write trace rows; without ``timing`` the elapsed column is left empty
    so repeated runs produce byte-identical files."""
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            wr = csv.writer(fh, lineterminator="\n")
            wr.writerow(CSV_HEADER)
            for r in records:
                wr.writerow([
                    r.trial, r.seed, r.algorithm, r.iteration, _fmt(r.best_cost),
                    r.n_nodes, r.n_xfail, r.elapsed_ns if timing else "",
                ])
    except OSError as e:
        raise OSError(f"cannot write CSV to {path}: {e}") from e


def format_summary(summary: ExperimentSummary) -> str:
    def cell(x, spec):
        return "-" if x is None or (isinstance(x, float) and math.isnan(x)) else format(x, spec)

    head = ["algorithm", "trials", "solved", "mean_cost", "std_cost", "passage_rate", "first_iter", "wall_s"]
    rows = [
        [
            a.algorithm, str(a.trials), str(a.solved), cell(a.mean_cost, ".4f"), cell(a.std_cost, ".4f"),
            cell(a.success_rate, ".3f"), cell(a.mean_first_iter, ".1f"), cell(a.mean_wall_s, ".3f"),
        ]
        for a in summary.arms
    ]
    widths = [max(len(h), *(len(r[k]) for r in rows)) for k, h in enumerate(head)]
    lines = ["  ".join(h.ljust(wd) for h, wd in zip(head, widths))]
    lines.append("  ".join("-" * wd for wd in widths))
    for r in rows:
        lines.append("  ".join(c.ljust(wd) if k == 0 else c.rjust(wd) for k, (c, wd) in enumerate(zip(r, widths))))
    return "\n".join(lines)
