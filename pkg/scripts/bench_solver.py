"""Time all-pairs distance computation against graph size.

Compares the label-setting solver with brute-force path enumeration on small
graphs, and the Max fast path (spanning-tree minimax) on larger ones.
"""

import argparse
import random
import time

from metric_cont.numeric import FLOAT
from metric_cont.oracle import brute_all_pairs
from metric_cont.solver import all_pairs
from metric_cont.suites import random_graph
from metric_cont.triangle import parse_family


def timed(fn, reps):
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - start) / reps * 1e3


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family", default="additive")
    ap.add_argument("--sizes", type=int, nargs="+", default=[5, 8, 10, 50, 200])
    ap.add_argument("--density", type=float, default=0.4)
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    family = parse_family(args.family)
    rng = random.Random(args.seed)
    print(f"{'n':>5} {'edges':>6} {'solver ms':>10} {'brute ms':>10} {'mst ms':>8}")
    for n in args.sizes:
        g = random_graph(rng, FLOAT, (n, n), (args.density, args.density), family.domain_floor)
        solver = timed(lambda: all_pairs(g, family), args.reps)
        brute = f"{timed(lambda: brute_all_pairs(g, family), 1):10.1f}" if n <= 10 else f"{'-':>10}"
        mst = f"{timed(lambda: all_pairs(g, family, fast_max=True), args.reps):8.1f}" if family.kind == "max" else f"{'-':>8}"
        print(f"{n:>5} {len(g.edges):>6} {solver:>10.1f} {brute} {mst}")


if __name__ == "__main__":
    raise SystemExit(main())
