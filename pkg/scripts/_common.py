"""Shared helpers for the experiment scripts."""
import argparse
from pathlib import Path

from rrtldv.bench import emit_csv, format_summary, run_experiment
from rrtldv.planner import PlannerParams
from rrtldv.scenario import load_scenario


def parser(description: str, scenario: str, trials: int, seed: int) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--scenario", default=scenario)
    p.add_argument("--trials", type=int, default=trials)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--iters", type=int, help="override the scenario iteration count")
    p.add_argument("--out", default="out")
    return p


def scenario_params(s, iters=None, **kw) -> PlannerParams:
    p = s.params
    base = dict(eta=p["eta"], gamma=p["gamma"], max_iter=iters or p["iters"], goal_bias=p["goal_bias"])
    base.update(kw)
    return PlannerParams(**base)


def run(args, arms_fn, tag: str, time_budget=None):
    s = load_scenario(args.scenario)
    arms = arms_fn(s)
    records, summary, outcomes = run_experiment(s, arms, args.trials, args.seed, time_budget=time_budget)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{s.name}_{tag}.csv"
    emit_csv(records, path, timing=time_budget is not None)
    print(f"{s.name}: {args.trials} paired seeds from {args.seed}")
    print(format_summary(summary))
    print(f"trace written to {path}")
    return s, summary, outcomes
