"""Run the tile analysis over random and structured instances and tally results."""

import argparse
import collections
import time

from anchorpack.analysis import analyze_instance
from anchorpack.bounds import BoundParams
from anchorpack.instances import gen_nested_staircases, gen_random, hyperbolic_staircase


def instances(count: int, max_n: int, seed: int):
    for s in range(count):
        yield f"uniform:{seed + s}", gen_random(2 + s % (max_n - 1), seed + s)
        yield f"clustered:{seed + s}", gen_random(2 + s % (max_n - 1), seed + s, "clustered")
    for d in (1, 2, 3, 4, 5):
        yield f"nested:{d}", gen_nested_staircases(d)
        yield f"nested-mirrored:{d}", gen_nested_staircases(d, mirrored=True)
    for m, r in ((12, 100.0), (13, 10.0), (16, 8.0)):
        yield f"hyperbolic:{m}:{r:g}", hyperbolic_staircase(m, r)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--max-n", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--beta", type=float, default=11.31)
    ap.add_argument("--lambda", dest="lam", type=float, default=0.4456)
    ap.add_argument("--alpha", type=float, default=0.7696)
    args = ap.parse_args()

    params = BoundParams(args.beta, args.lam, args.alpha)
    checks = collections.Counter()
    failed = collections.Counter()
    beta_tiles = 0
    t0 = time.perf_counter()
    for name, inst in instances(args.count, args.max_n, args.seed):
        report = analyze_instance(inst, params)
        beta_tiles += len(report.beta_tiles)
        for r in report.results:
            checks[r.name] += 1
            if not r.passed:
                failed[r.name] += 1
                print(f"{name}: {r.line()}")
    print(f"beta_tiles={beta_tiles} ({time.perf_counter() - t0:.1f}s)")
    for label in sorted(checks):
        print(f"{label:24s} {checks[label]:7d} checks {failed[label]:4d} failures")


if __name__ == "__main__":
    main()
