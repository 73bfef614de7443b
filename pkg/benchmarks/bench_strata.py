#!/usr/bin/env python3
"""Benchmark the stratification kernel: compiled core vs pure Python.

Both implementations produce identical histograms (this is asserted); the
compiled core walks gcd chains per pair in C, the fallback merges cached
factorizations.  Usage:

    python benchmarks/bench_strata.py [--d 2] [--levels 3,9,27]
"""

import argparse
import time

from tracelab.fields import make_field
from tracelab.kernels import HAVE_COMPILED, delta_histogram_p1


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--levels", default="3,9,27", help="comma-separated prime powers")
    args = ap.parse_args()

    fields = []
    for q in (int(s) for s in args.levels.split(",")):
        for p in range(2, q + 1):
            if q % p == 0:
                k = 0
                while q % p == 0:
                    q //= p
                    k += 1
                fields.append(make_field(p, k))
                break

    print(f"compiled core available: {HAVE_COMPILED}")
    print(f"{'q':>6} {'pairs':>12} {'compiled':>10} {'python':>10} {'speedup':>8}")
    for F in fields:
        t0 = time.perf_counter()
        compiled = delta_histogram_p1(F, args.d) if HAVE_COMPILED else None
        t1 = time.perf_counter()
        pure = delta_histogram_p1(F, args.d, force_python=True)
        t2 = time.perf_counter()
        if compiled is not None:
            assert compiled == pure, "kernel disagreement"
        total = pure[2]
        ct = f"{t1 - t0:9.2f}s" if compiled is not None else "      n/a"
        speed = f"{(t2 - t1) / (t1 - t0):7.1f}x" if compiled is not None else "     n/a"
        print(f"{F.q:>6} {total:>12} {ct} {t2 - t1:9.2f}s {speed}")
        print(f"        histogram: {pure[0]}  nonreduced: {pure[1]}")


if __name__ == "__main__":
    main()
