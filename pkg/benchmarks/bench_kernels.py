"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import time

from clab import _kernels_py
from clab._backend import get_kernels
from clab.cyclotomic import build_reducer

CASES = [
    ("sieve 1e6", lambda k: k.linear_sieve(10**6)),
    ("sieve 1e7", lambda k: k.linear_sieve(10**7)),
    ("collision n=20 k=10", lambda k: _collide(k, 20, 10)),
    ("collision n=23 k=11 (none)", lambda k: _collide(k, 23, 11)),
    ("collision sweep n<=18", lambda k: [_collide(k, n, j) for n in range(2, 19) for j in range(1, n)]),
]


def _collide(k, n, j):
    r = build_reducer(n)
    return k.find_collision(r.rows, r.row_hash, j)


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    try:
        compiled = get_kernels("compiled")
    except ImportError:
        compiled = None
        print("compiled extension not built; timing the fallback only")
    print(f"{'case':32s} {'python [s]':>11s} {'compiled [s]':>13s} {'speedup':>8s}")
    for name, fn in CASES:
        tp = best_of(lambda: fn(_kernels_py), args.repeat)
        if compiled is None:
            print(f"{name:32s} {tp:11.4f}")
            continue
        tc = best_of(lambda: fn(compiled), args.repeat)
        print(f"{name:32s} {tp:11.4f} {tc:13.4f} {tp / tc:7.1f}x")


if __name__ == "__main__":
    main()
