"""Time the compiled kernels against the numpy reference and check they agree.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""
import argparse
import math
import time

import numpy as np

from permgv import _pykernels
from permgv.perms import all_permutations, distance_ball

try:
    from permgv import _kernels
except ImportError:
    _kernels = None


def best_of(repeat, fn):
    best, out = math.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(quick):
    n_greedy = 7 if quick else 8
    for d in (3, 4, 5, n_greedy):
        ball = distance_ball(n_greedy, d - 1)
        yield f"greedy_scan n={n_greedy} d={d} (ball)", "greedy_scan", (n_greedy, d, None, ball)
    yield f"greedy_scan n={n_greedy} d=4 (kept-list)", "greedy_scan", (n_greedy, 4, None, None)
    order = np.random.default_rng(0).permutation(math.factorial(7))
    yield "greedy_scan n=7 d=4 shuffled", "greedy_scan", (7, 4, order, distance_ball(7, 3))
    perms = all_permutations(7)
    for d in (3, 5, 7):
        yield f"build_adjacency n=7 d={d}", "build_adjacency", (perms, distance_ball(7, d - 1))
    words = _pykernels.greedy_scan(7, 3, None, distance_ball(7, 2))[: (600 if quick else 2000)]
    yield f"min_distance {len(words)} words n=7", "min_distance", (words,)


def same(a, b):
    if isinstance(a, np.ndarray):
        return np.array_equal(a, b)
    return a == b


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller sizes")
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the reference backend is available")
    print(f"{'case':42s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, name, call_args in cases(args.quick):
        t_py, out_py = best_of(args.repeat, lambda: getattr(_pykernels, name)(*call_args))
        if _kernels is None:
            print(f"{label:42s} {t_py:10.4f} {'-':>10s} {'-':>8s}")
            continue
        t_c, out_c = best_of(args.repeat, lambda: getattr(_kernels, name)(*call_args))
        if not same(out_py, out_c):
            raise SystemExit(f"backends disagree on {label}")
        print(f"{label:42s} {t_py:10.4f} {t_c:10.4f} {t_py / t_c:7.1f}x")


if __name__ == "__main__":
    main()
