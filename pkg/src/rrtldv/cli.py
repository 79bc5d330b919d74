"""Command line entry point: ``rrtldv {plan,bench,validate} SCENARIO [flags]``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import emit_csv, format_summary, run_experiment, run_trial, TrialRecord
from .planner import PlannerParams
from .scenario import Scenario, ScenarioError, load_scenario
from .svg import emit_svg

EXIT_OK, EXIT_USAGE, EXIT_SCENARIO = 0, 1, 2

ALGOS = {"rrt-star": "rrt_star", "ldv": "ldv"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_help(sys.stderr)
        raise UsageError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("scenario", help="scenario JSON file or bundled scenario name")
    p.add_argument("--algo", action="append", choices=sorted(ALGOS), help="algorithm arm (repeatable)")
    p.add_argument("--iters", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--lambda-s", type=float)
    p.add_argument("--lambda-i", type=float)
    p.add_argument("--m", type=float)
    p.add_argument("--rho-fail", type=float)
    p.add_argument("--r-f", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--goal-bias", type=float)
    p.add_argument("--eps-c", type=float)
    p.add_argument("--out", default="out", help="output directory (default: out)")
    p.add_argument("--timing", action="store_true", help="write wall-clock elapsed_ns into the CSV")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rrtldv", description="RRT* / RRT*-LDV planner and benchmark harness")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("plan", help="single run; writes CSV trace and (2-D only) an SVG snapshot")
    _add_common(p)
    b = sub.add_parser("bench", help="multi-trial experiment; writes CSV and prints a summary")
    _add_common(b)
    b.add_argument("--time-budget", type=float, help="seconds per trial instead of a fixed iteration count")
    v = sub.add_parser("validate", help="load and check a scenario file")
    v.add_argument("scenario")
    return parser


FLAG_TO_PARAM = {
    "lambda_s": "lambda_s", "lambda_i": "lambda_i", "m": "m", "rho_fail": "rho_fail", "r_f": "r_f",
    "eta": "eta", "gamma": "gamma", "goal_bias": "goal_bias", "eps_c": "eps_c",
}


def resolve_settings(args, scenario: Scenario) -> tuple[list[PlannerParams], int, int]:
    """Merge scenario defaults with CLI overrides into planner params per arm."""
    merged = dict(scenario.params)
    for key in list(FLAG_TO_PARAM) + ["iters", "trials", "seed"]:
        val = getattr(args, key, None)
        if val is not None:
            merged[key] = val
    algos = args.algo or ([merged["algo"]] if "algo" in merged else None)
    if algos is None:
        algos = ["ldv"] if args.command == "plan" else ["rrt-star", "ldv"]
    kw = {FLAG_TO_PARAM[k]: v for k, v in merged.items() if k in FLAG_TO_PARAM}
    kw["max_iter"] = int(merged.get("iters", 1500))
    seed = int(merged.get("seed", 0))
    trials = int(merged.get("trials", 20))
    arms = []
    for a in dict.fromkeys(algos):
        if a not in ALGOS:
            raise UsageError(f"unknown algorithm {a!r}")
        arms.append(PlannerParams(mode=ALGOS[a], seed=seed, **kw))
    return arms, trials, seed


def cmd_validate(args) -> int:
    s = load_scenario(args.scenario)
    print(
        f"{s.name}: ok (dim={s.dim}, obstacles={len(s.world.obstacles)}, "
        f"passage_regions={len(s.passage_regions)})"
    )
    return EXIT_OK


def cmd_plan(args) -> int:
    s = load_scenario(args.scenario)
    arms, _, seed = resolve_settings(args, s)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for params in arms:
        o = run_trial(s, params, 0, keep_result=True)
        records = [
            TrialRecord(0, seed, o.algorithm, r.iteration, r.best_cost, r.n_nodes, r.n_xfail, r.elapsed_ns)
            for r in o.trace
        ]
        stem = f"{s.name}_{params.mode}_seed{seed}"
        emit_csv(records, out / f"{stem}.csv", timing=args.timing)
        if s.dim == 2:
            emit_svg(o.result, s, out / f"{stem}.svg")
        cost = "none" if o.best_cost is None else f"{o.best_cost:.4f}"
        hits = ",".join(k for k, v in o.passage_hits.items() if v) or "-"
        print(f"{o.algorithm}: best_cost={cost} first_solution_iter={o.first_solution_iter} passages={hits}")
    return EXIT_OK


def cmd_bench(args) -> int:
    s = load_scenario(args.scenario)
    arms, trials, seed = resolve_settings(args, s)
    if trials < 1:
        raise UsageError("--trials must be >= 1")
    records, summary, _ = run_experiment(s, arms, trials, seed, time_budget=args.time_budget)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{s.name}_bench.csv"
    emit_csv(records, path, timing=args.timing)
    print(format_summary(summary))
    print(f"wrote {len(records)} rows to {path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING)
        handler = {"plan": cmd_plan, "bench": cmd_bench, "validate": cmd_validate}[args.command]
        return handler(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as e:
        print(f"scenario error: {e}", file=sys.stderr)
        return EXIT_SCENARIO
    except ValueError as e:
        # bad parameter values surfaced by PlannerParams / SamplerParams
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
