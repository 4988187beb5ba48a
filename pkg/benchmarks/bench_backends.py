#!/usr/bin/env python3
"""Benchmark the compiled rational kernel against the pure fallback.

Two views:

* kernel microbenchmarks run both Q types in-process on identical
  integer workloads (arithmetic chains, comparisons, powers);
* end-to-end timings rerun representative package workloads (group-law
  sweep, the recursion with verification, gap scanning) in subprocesses
  with QSHIFT_BACKEND forced to each backend.

Usage: python benchmarks/bench_backends.py [--repeat N] [--skip-e2e]
"""

import argparse
import os
import subprocess
import sys
import time


def time_fn(fn, repeat):
    best = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best.append(time.perf_counter() - t0)
    return min(best)


def kernel_workloads(q_type):
    Q = q_type

    def arithmetic_chain():
        acc = Q(0)
        for k in range(1, 3000):
            acc = acc + Q(1, k)
            acc = acc * Q(k, k + 1)
        return acc

    def comparisons():
        vals = [Q(n, d) for n in range(-25, 26) for d in range(1, 26)]
        count = 0
        for a in vals[::3]:
            for b in vals[::7]:
                if a < b:
                    count += 1
        return count

    def powers():
        total = Q(0)
        for k in range(400):
            total = total + Q(2, 3) ** (k % 24) + Q(3, 5) ** (-(k % 7))
        return total

    return {"arithmetic chain": arithmetic_chain,
            "comparisons": comparisons,
            "integer powers": powers}


E2E_SNIPPET = r"""
import time
from random import Random
from qshift._qarith import BACKEND
from qshift.construction import (EStream, rational_enum,
                                 run_shift_construction, verify_shift_trace)
from qshift.ndsets import ndset_points
from qshift.properties import brute_scan_gap
from qshift.sampling import rng_interval, rng_ndset, rng_plmap, rng_rational

timings = {}

t0 = time.perf_counter()
rng = Random(1)
for _ in range(600):
    f, g = rng_plmap(rng), rng_plmap(rng)
    q = rng_rational(rng)
    assert f.compose(g).apply(q) == f.apply(g.apply(q))
    assert f.compose(f.invert()).is_identity
timings["group laws x600"] = time.perf_counter() - t0

t0 = time.perf_counter()
stream = EStream([ndset_points(rational_enum(i)) for i in range(13)])
trace = run_shift_construction(stream, 12)
assert verify_shift_trace(trace, stream).passed
timings["construction N=12 + verify"] = time.perf_counter() - t0

t0 = time.perf_counter()
rng = Random(2)
for _ in range(60):
    e = rng_ndset(rng)
    gap = e.find_gap(rng_interval(rng))
    assert brute_scan_gap(e, gap, 96) is None
timings["gap scan x60 (den<=96)"] = time.perf_counter() - t0

for name, dt in timings.items():
    print(f"{BACKEND}\t{name}\t{dt:.4f}")
"""


def run_e2e(backend):
    env = dict(os.environ, QSHIFT_BACKEND=backend)
    out = subprocess.run([sys.executable, "-c", E2E_SNIPPET], env=env,
                         capture_output=True, text=True)
    if out.returncode != 0:
        raise RuntimeError(f"{backend} run failed:\n{out.stderr}")
    rows = {}
    for line in out.stdout.splitlines():
        got_backend, name, dt = line.split("\t")
        assert got_backend == backend, "backend override did not take"
        rows[name] = float(dt)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3,
                        help="repetitions per microbenchmark (keeps the min)")
    parser.add_argument("--skip-e2e", action="store_true",
                        help="only run the in-process microbenchmarks")
    args = parser.parse_args()

    from qshift._qarith.pure import Q as PureQ
    try:
        from qshift._qarith._speedups import Q as FastQ
    except ImportError:
        print("compiled kernel not built; nothing to compare")
        return 1

    print(f"{'kernel microbenchmark':<28}{'pure':>10}{'speedups':>10}{'ratio':>8}")
    for name, fn in kernel_workloads(PureQ).items():
        pure_t = time_fn(fn, args.repeat)
        fast_t = time_fn(kernel_workloads(FastQ)[name], args.repeat)
        print(f"{name:<28}{pure_t:>9.4f}s{fast_t:>9.4f}s{pure_t / fast_t:>7.2f}x")

    if args.skip_e2e:
        return 0

    print()
    pure_rows = run_e2e("pure")
    fast_rows = run_e2e("speedups")
    print(f"{'end-to-end workload':<28}{'pure':>10}{'speedups':>10}{'ratio':>8}")
    for name in pure_rows:
        p, f = pure_rows[name], fast_rows[name]
        print(f"{name:<28}{p:>9.4f}s{f:>9.4f}s{p / f:>7.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
