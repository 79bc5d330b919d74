"""Narrow-passage success rate and final cost, RRT* vs RRT*-LDV on passage2d."""
from _common import parser, run, scenario_params


def main():
    args = parser(__doc__, "passage2d", 40, 7).parse_args()
    run(
        args,
        lambda s: [
            scenario_params(s, args.iters, mode="rrt_star"),
            scenario_params(s, args.iters, mode="ldv", lambda_s=0.9, lambda_i=0.5),
        ],
        "passage_success",
    )


if __name__ == "__main__":
    main()
