"""Five-dimensional slot world: RRT* vs RRT*-LDV at an equal iteration budget."""
from _common import parser, run, scenario_params


def main():
    args = parser(__doc__, "box5d", 20, 0).parse_args()
    run(
        args,
        lambda s: [
            scenario_params(s, args.iters, mode="rrt_star"),
            scenario_params(s, args.iters, mode="ldv", lambda_s=0.9, lambda_i=0.5),
        ],
        "compare",
    )


if __name__ == "__main__":
    main()
