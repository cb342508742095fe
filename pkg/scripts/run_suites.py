"""Cross-check the solver, checker and closed-form rules against brute force.

Prints one row per (suite, family, mode) with instance counts, how many were
metrizable and how many disagreements turned up.

    python3 scripts/run_suites.py --suite exhaustive --families additive max
"""

import argparse
import time

from metric_cont.numeric import EXACT, FLOAT
from metric_cont.oracle import verify_equivalence
from metric_cont.suites import exhaustive_suite, random_suite, suite_seed
from metric_cont.triangle import BUILTIN_FAMILIES, parse_family


def run(suite, family, mode, count, seed, max_n):
    if suite == "exhaustive":
        graphs = exhaustive_suite(max_n, (1, 2, 3), mode)
    else:
        graphs = random_suite(count, seed, mode, family)
    total = metrizable = bad = 0
    start = time.perf_counter()
    for g in graphs:
        rep = verify_equivalence(g, family, mode)
        total += 1
        metrizable += rep["criteria"]["ii"]
        bad += not rep["agreement"]
    return total, metrizable, bad, time.perf_counter() - start


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", choices=("exhaustive", "random", "both"), default="both")
    ap.add_argument("--families", nargs="+", default=list(BUILTIN_FAMILIES))
    ap.add_argument("--mode", choices=("float", "exact", "both"), default="both")
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=None)
    ap.add_argument("--max-n", type=int, default=5)
    args = ap.parse_args()

    seed = suite_seed() if args.seed is None else args.seed
    suites = ("exhaustive", "random") if args.suite == "both" else (args.suite,)
    print(f"{'suite':<11} {'family':<15} {'mode':<6} {'n':>6} {'metric':>7} {'disagree':>8} {'secs':>7}")
    failures = 0
    for suite in suites:
        for name in args.families:
            family = parse_family(name)
            for mode in (EXACT, FLOAT):
                if args.mode not in ("both", mode.name) or (mode.exact and not family.exact_capable):
                    continue
                n, ok, bad, secs = run(suite, family, mode, args.count, seed, args.max_n)
                failures += bad
                print(f"{suite:<11} {name:<15} {mode.name:<6} {n:>6} {ok:>7} {bad:>8} {secs:>7.1f}")
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
