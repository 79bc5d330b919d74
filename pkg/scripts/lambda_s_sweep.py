"""Final cost as the sampling bias lambda_s grows (selection bias fixed)."""
from _common import parser, run, scenario_params


def main():
    p = parser(__doc__, "passage2d", 40, 7)
    p.add_argument("--values", type=float, nargs="+", default=[0.0, 0.5, 0.9])
    p.add_argument("--lambda-i", type=float, default=0.0)
    args = p.parse_args()
    run(
        args,
        lambda s: [
            scenario_params(s, args.iters, mode="ldv", lambda_s=v, lambda_i=args.lambda_i) for v in args.values
        ],
        "lambda_s_sweep",
    )


if __name__ == "__main__":
    main()
