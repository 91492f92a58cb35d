#!/usr/bin/env python3
"""Benchmark the compiled kernel against the pure-Python fallback.

Runs the three kernel entry points on representative workloads (single
evaluations, batch evaluation, and the linear orbit loop) with both
backends and prints a timing table.  Results are checked to be identical
before timing.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import random
import time

from lineaut import _kernel_py

try:
    from lineaut import _kernel
except ImportError:
    _kernel = None

from lineaut.automorphism import PLAutomorphism
from lineaut.samples import random_pl


def make_table(pl):
    return pl._table


def workload():
    rng = random.Random(13)
    maps = [random_pl(rng, max_knots=6) for _ in range(20)]
    tables = [make_table(pl) for pl in maps]
    points = [(rng.randint(-4000, 4000), rng.randint(1, 64)) for _ in range(2000)]
    translation = make_table(PLAutomorphism.translation(1))
    return tables, points, translation


def check_agreement(tables, points, translation):
    if _kernel is None:
        return
    for table in tables:
        assert _kernel.pl_eval_many(table, points) == _kernel_py.pl_eval_many(table, points)
    a = _kernel.pl_orbit_until(translation, 0, 1, 1 << 14, 1, True, True)
    b = _kernel_py.pl_orbit_until(translation, 0, 1, 1 << 14, 1, True, True)
    assert a == b


def bench(kernel, tables, points, translation, repeat):
    out = {}
    t0 = time.perf_counter()
    for _ in range(repeat):
        for table in tables:
            for n, d in points[:200]:
                kernel.pl_eval(table, n, d)
    out["pl_eval"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat):
        for table in tables:
            kernel.pl_eval_many(table, points)
    out["pl_eval_many"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat):
        kernel.pl_orbit_until(translation, 0, 1, 1 << 16, 1, True, True)
    out["pl_orbit_until"] = time.perf_counter() - t0
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    tables, points, translation = workload()
    check_agreement(tables, points, translation)

    rows = [("pure", bench(_kernel_py, tables, points, translation, args.repeat))]
    if _kernel is not None:
        rows.append(("compiled", bench(_kernel, tables, points, translation, args.repeat)))
    else:
        print("compiled kernel not built; timing the pure backend only")

    names = ["pl_eval", "pl_eval_many", "pl_orbit_until"]
    print(f"{'backend':<10}" + "".join(f"{n:>18}" for n in names))
    for label, res in rows:
        print(f"{label:<10}" + "".join(f"{res[n]:>17.3f}s" for n in names))
    if len(rows) == 2:
        pure, comp = rows[0][1], rows[1][1]
        print(f"{'speedup':<10}" + "".join(f"{pure[n] / comp[n]:>17.2f}x" for n in names))


if __name__ == "__main__":
    main()
