"""Greedy vs constructed packing on the adversarial family over a grid of eps."""

import argparse
import time

from anchorpack.cli import ratio_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.1, 0.05, 0.02, 0.01, 0.005])
    ap.add_argument("--scale", type=float, default=2.0, help="n = round(scale / eps)")
    ap.add_argument("--no-validate", action="store_true")
    args = ap.parse_args()

    print("n eps greedy_area constructed_area ratio residual seconds")
    for eps in args.eps:
        n = max(1, round(args.scale / eps))
        t0 = time.perf_counter()
        row = ratio_experiment(n, eps, validate=not args.no_validate)
        print(
            f"{row.n} {row.eps:g} {row.greedy_area:.6f} {row.constructed_area:.6f} "
            f"{row.ratio:.6f} {row.residual:.3e} {time.perf_counter() - t0:.2f}"
        )


if __name__ == "__main__":
    main()
