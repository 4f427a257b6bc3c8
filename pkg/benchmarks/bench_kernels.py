"""Compare the compiled and pure-Python elimination kernels.

    python3 benchmarks/bench_kernels.py [--repeat N] [--size N]
"""

import argparse
import random
import time
from fractions import Fraction

from qgroupoid import linalg
from qgroupoid.algebra import make_multimatrix
from qgroupoid.morita import amplify, canonical_context
from qgroupoid.weak import groupoid_weak_hopf, pair_groupoid


def random_rows(n, m, density, seed):
    rng = random.Random(seed)
    rows = []
    for _ in range(m):
        v = {j: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for j in range(n) if rng.random() < density}
        rows.append({j: x for j, x in v.items() if x})
    return rows


def elimination(size):
    rows = random_rows(size, size + size // 2, 0.15, 7)
    return lambda: linalg.nullspace(rows, size)


def amplification():
    H, _ = groupoid_weak_hopf(pair_groupoid(2))
    ctx = canonical_context(make_multimatrix((2, 1)))
    return lambda: amplify(H, ctx)


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--size", type=int, default=120)
    args = ap.parse_args()
    backends = ["python"] + (["compiled"] if linalg.compiled_available() else [])
    if len(backends) == 1:
        print("compiled kernels not built; timing the Python fallback only")
    workloads = [(f"nullspace {args.size}x{args.size * 3 // 2}", elimination(args.size)),
                 ("amplify pair groupoid along (2,1)", amplification())]
    print(f"{'workload':40s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, fn in workloads:
        results = []
        for b in backends:
            linalg.use_backend(b)
            results.append(best_of(fn, args.repeat))
        ratio = f"{results[0] / results[-1]:8.2f}x" if len(results) > 1 else ""
        print(f"{name:40s} " + " ".join(f"{t:9.3f}s" for t in results) + "  " + ratio)
    linalg.use_backend(backends[-1])


if __name__ == "__main__":
    main()
