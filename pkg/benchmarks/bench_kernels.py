"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both backends are called directly, so one process measures both.
"""

import argparse
import timeit

import numpy as np

from honeyenc import _fallback

try:
    from honeyenc import _kernels
except ImportError:
    _kernels = None


def cases(rng):
    yield "assignment n=8", "assignment", (np.ascontiguousarray(rng.random((8, 8))),)
    yield "assignment n=32", "assignment", (np.ascontiguousarray(rng.random((32, 32))),)
    yield "assignment n=96", "assignment", (np.ascontiguousarray(rng.random((96, 96))),)
    yield "permanent n=6", "permanent", (np.ascontiguousarray(rng.random((6, 6))),)
    yield "permanent n=12", "permanent", (np.ascontiguousarray(rng.random((12, 12))),)
    rows = np.ascontiguousarray(rng.random((3, 20)))
    outputs = np.array([(a, b, c) for a in range(20) for b in range(a, 20) for c in range(b, 20)],
                       dtype=np.intp)
    yield "permanents N=3 |V|=20", "permanents_over_outputs", (rows, outputs)


def bench(fn, args, repeat):
    number = 1
    while True:
        t = timeit.timeit(lambda: fn(*args), number=number)
        if t > 0.05 or number > 10_000:
            break
        number *= 4
    best = min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat))
    return best / number


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(7)
    print(f"{'kernel':<24}{'python (ms)':>14}{'cython (ms)':>14}{'speedup':>10}")
    for label, name, call_args in cases(rng):
        py = bench(getattr(_fallback, name), call_args, args.repeat)
        if _kernels is None:
            print(f"{label:<24}{py * 1e3:>14.3f}{'n/a':>14}{'':>10}")
            continue
        cy = bench(getattr(_kernels, name), call_args, args.repeat)
        print(f"{label:<24}{py * 1e3:>14.3f}{cy * 1e3:>14.4f}{py / cy:>9.1f}x")


if __name__ == "__main__":
    main()
