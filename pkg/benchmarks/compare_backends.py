"""Time the compiled core against the pure-Python core on the bench suites.

    python benchmarks/compare_backends.py [--repeat N] [--fuel N]

Both cores run the same corpora with the same fuel; node counts must agree
exactly, otherwise the script exits with status 1.
"""

import argparse
import sys
import time

from lamred import backend, bench
from lamred._deep import run_deep
from lamred.strategies import Strategy

SUITES = (("ski", 1, 500, 12), ("church", 1, 60, 200))


def run_suite(core, cases, fuel):
    """Normalize every case under every strategy; return (seconds, counts)."""
    counts = []
    start = time.perf_counter()
    for s in Strategy:
        for case in cases:
            t = case.build(core=core)
            m = core.Meter()
            try:
                run_deep(core.Reducer(m, fuel).normalize, t, s.code)
            except core.NonTerminating:
                pass
            counts.append(m.node_counts())
    return time.perf_counter() - start, counts


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3, help="best of N runs (default 3)")
    p.add_argument("--fuel", type=int, default=bench.BENCH_FUEL)
    args = p.parse_args(argv)

    kinds = backend.available()
    if "compiled" not in kinds:
        print("compiled core not built; only the pure-Python core is available", file=sys.stderr)
    print("%-8s %-8s %10s  %s" % ("suite", "core", "best (s)", "speedup"))
    status = 0
    for suite, seed, count, size in SUITES:
        cases = bench.SuiteSpec(suite, seed, count, size).cases()
        times = {}
        ref = None
        for kind in reversed(kinds):
            core = backend.load(kind)
            best = None
            for _ in range(args.repeat):
                dt, counts = run_suite(core, cases, args.fuel)
                best = dt if best is None else min(best, dt)
            if ref is None:
                ref = counts
            elif counts != ref:
                print("%s: node counts differ between cores" % suite, file=sys.stderr)
                status = 1
            times[kind] = best
        for kind in reversed(kinds):
            speed = times["pure"] / times[kind]
            print("%-8s %-8s %10.3f  %.2fx" % (suite, kind, times[kind], speed))
    return status


if __name__ == "__main__":
    sys.exit(main())
