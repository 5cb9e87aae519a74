#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the bulk factor/value-table builds (the hot path behind search,
irreducible enumeration, and the identity sweeps) on a few
representative (q, depth) configurations, then one full search join.

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

from fqtotient.field import FieldSpec
from fqtotient.kernels import build_value_tables, clear_caches
from fqtotient.search import search

CONFIGS = [(2, 16), (3, 10), (5, 8), (9, 6)]


def time_build(q: int, depth: int, backend: str, repeats: int) -> float:
    field = FieldSpec.for_q(q)
    best = float("inf")
    for _ in range(repeats):
        clear_caches()
        t0 = time.perf_counter()
        build_value_tables(field, depth, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best


def time_search(q: int, depth: int, backend: str) -> float:
    field = FieldSpec.for_q(q)
    clear_caches()
    t0 = time.perf_counter()
    search(field, depth, depth, backend=backend)
    return time.perf_counter() - t0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    # warm the jit cache so numba timings exclude compilation
    build_value_tables(FieldSpec.for_q(2), 4, backend="numba")

    print(f"{'config':<18}{'numba':>10}{'numpy':>10}{'speedup':>9}")
    for q, depth in CONFIGS:
        nb = time_build(q, depth, "numba", args.repeats)
        np_ = time_build(q, depth, "numpy", args.repeats)
        label = f"tables q={q} d={depth}"
        print(f"{label:<18}{nb:>9.3f}s{np_:>9.3f}s{np_ / nb:>8.1f}x")

    for q, depth in ((5, 8), (9, 6)):
        nb = time_search(q, depth, "numba")
        np_ = time_search(q, depth, "numpy")
        label = f"search q={q} d={depth}"
        print(f"{label:<18}{nb:>9.3f}s{np_:>9.3f}s{np_ / nb:>8.1f}x")

    clear_caches()


if __name__ == "__main__":
    main()
