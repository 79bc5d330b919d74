"""Final cost as the selection bias lambda_i grows (sampling bias fixed)."""
from _common import parser, run, scenario_params


def main():
    p = parser(__doc__, "passage2d", 40, 7)
    p.add_argument("--values", type=float, nargs="+", default=[0.0, 0.5, 1.0])
    p.add_argument("--lambda-s", type=float, default=0.9)
    args = p.parse_args()
    run(
        args,
        lambda s: [
            scenario_params(s, args.iters, mode="ldv", lambda_s=args.lambda_s, lambda_i=v) for v in args.values
        ],
        "lambda_i_sweep",
    )


if __name__ == "__main__":
    main()
