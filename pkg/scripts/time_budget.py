"""Best cost reached within a wall-clock budget per trial.

Planners advance in 100-iteration chunks until the budget is spent, so each
run is a deterministic prefix of its seeded sequence; only the prefix length
depends on machine speed.
"""
from _common import parser, run, scenario_params


def main():
    p = parser(__doc__, "box5d", 10, 0)
    p.add_argument("--budget", type=float, nargs="+", default=[1.0, 2.0], help="seconds per trial")
    args = p.parse_args()
    for b in args.budget:
        print(f"\n== budget {b:g}s ==")
        run(
            args,
            lambda s: [
                scenario_params(s, mode="rrt_star"),
                scenario_params(s, mode="ldv", lambda_s=0.9, lambda_i=0.5),
            ],
            f"budget{b:g}s",
            time_budget=b,
        )


if __name__ == "__main__":
    main()
