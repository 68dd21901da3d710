"""Time the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Each workload is run on both backends; outputs are compared before timing.
"""

import argparse
import random
import sys
import time
from itertools import combinations

from kneser_lab import kernels
from kneser_lab.kernels import python_backend


def _random_rows(rng, p, n, r):
    return [tuple(rng.randrange(p) for _ in range(n)) for _ in range(r)]


def workloads():
    rng = random.Random(1)
    codes = [(p, n, python_backend.rref(_random_rows(rng, p, n, rng.randint(1, 5)), n, p)[0])
             for p, n in [(2, 10), (3, 10), (5, 10), (3, 16)] for _ in range(50)]

    def rref(b):
        return [b.rref(_random_rows(random.Random(i), 3, 12, 8), 12, 3) for i in range(2000)]

    def schur(b):
        return [b.schur_span(c, c, n, p, True) for p, n, c in codes]

    def power(b):
        return [b.power_chain(c, n, p, 4) for p, n, c in codes]

    def points(b):
        return [b.count_binary_points(c, n, p) for p, n, c in codes]

    def scan(b):
        return [b.scan_block(2, 8, piv, 2, 15) for r in (3, 4) for piv in combinations(range(8), r)]

    def dfs(b):
        cands = tuple(m for m in range(1 << 8) if m.bit_count() % 4 == 0)
        return [b.closure_dfs(8, 4, cands, i, 2, 10 ** 8, 16) for i in range(len(cands))]

    return [("rref", rref), ("schur_span", schur), ("power_chain", power),
            ("count_binary_points", points), ("scan_block F_2^8", scan), ("closure_dfs l=4 n=8", dfs)]


def best_of(func, backend, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        func(backend)
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    compiled = kernels.compiled_backend
    if compiled is None:
        print("compiled backend not available; nothing to compare", file=sys.stderr)
        return 1
    print(f"{'workload':<24}{'python (s)':>12}{'compiled (s)':>14}{'speedup':>10}")
    for name, func in workloads():
        if func(python_backend) != func(compiled):
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        tp = best_of(func, python_backend, args.repeat)
        tc = best_of(func, compiled, args.repeat)
        print(f"{name:<24}{tp:>12.4f}{tc:>14.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
