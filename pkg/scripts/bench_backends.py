#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the same workloads through bigpoly._speedups and
bigpoly._kernels_py and prints a timing table.  Workloads:

  family   long/short status table for one strongly generic vector
  mu       mu scan over the status table
  lp       realizability LPs for every chamber fingerprint at the rank
  chambers full chamber enumeration (the production hot loop)

Usage: python scripts/bench_backends.py [--rmax 8] [--family-r 18]
"""

import argparse
import time

from bigpoly import _kernels_py as pure

try:
    from bigpoly import _speedups as fast
except ImportError:
    fast = None


def timeit(fn, *args, repeat=1):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench(name, pure_fn, fast_fn, args, repeat=1, check=None):
    tp, rp = timeit(pure_fn, *args, repeat=repeat)
    if fast_fn is None:
        print(f"{name:<28} {tp:>10.3f}s {'-':>10} {'-':>8}")
        return
    tf, rf = timeit(fast_fn, *args, repeat=repeat)
    if check is not None:
        assert check(rp, rf), f"{name}: backends disagree"
    print(f"{name:<28} {tp:>10.3f}s {tf:>9.3f}s {tp / tf:>7.1f}x")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--rmax", type=int, default=8,
                    help="largest rank for the enumeration benchmark")
    ap.add_argument("--family-r", type=int, default=18,
                    help="rank for the status-table benchmark")
    opts = ap.parse_args()

    if fast is None:
        print("compiled kernels unavailable; timing the pure lane only")
    print(f"{'workload':<28} {'pure':>11} {'compiled':>10} {'speedup':>8}")

    r = opts.family_r
    entries = tuple(3 * (1 << j) + 1 for j in range(r))
    bench(
        f"family r={r}",
        pure.family_data,
        fast.family_data if fast else None,
        (entries,),
        check=lambda a, b: a == b,
    )
    _, (_, status) = timeit(pure.family_data, entries)
    bench(
        f"mu r={r}",
        pure.mu_from_statuses,
        fast.mu_from_statuses if fast else None,
        (status, r),
        check=lambda a, b: a == b,
    )

    for rr in range(6, opts.rmax + 1):
        fingerprints = [
            rec[0] for rec in pure.enumerate_subtree(rr, (), pure.root_witness(rr))
        ]

        def lp_all(rank, prints):
            out = 0
            for mins in prints:
                if pure.lp_realize(rank, list(mins)) is not None:
                    out += 1
            return out

        def lp_all_fast(rank, prints):
            out = 0
            for mins in prints:
                if fast.lp_realize(rank, list(mins)) is not None:
                    out += 1
            return out

        bench(
            f"lp x{len(fingerprints)} r={rr}",
            lp_all,
            lp_all_fast if fast else None,
            (rr, fingerprints),
            check=lambda a, b: a == b,
        )
        bench(
            f"chambers r={rr}",
            pure.enumerate_subtree,
            fast.enumerate_subtree if fast else None,
            (rr, (), pure.root_witness(rr), "count"),
            check=lambda a, b: a == b,
        )


if __name__ == "__main__":
    main()
