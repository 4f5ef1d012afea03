"""Time OPF training + classification on the numba and numpy backends.

    python benchmarks/bench_opf.py [--sizes 50 100 200 400] [--features 30] [--repeats 5]

Also times one wrapper-objective evaluation loop on Wine, which is what an
optimization run spends nearly all of its time in.
"""

import argparse
import statistics
import time

import numpy as np

from hyperfs import _accel, opf
from hyperfs.data import load_dataset
from hyperfs.selection import WrapperObjective, _partitions


def timed(fn, repeats):
    fn()  # warm-up (numba compilation / cache load)
    samples = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def bench_size(n, d, repeats, use_numba):
    rng = np.random.default_rng(n)
    X = rng.random((n, d))
    y = rng.integers(1, 4, n)
    Q = rng.random((n, d))

    def work():
        opf.classify(opf.train(X, y, use_numba=use_numba), Q, use_numba=use_numba)

    return timed(work, repeats)


def bench_wrapper(repeats, use_numba):
    train, val, _ = _partitions(load_dataset("wine"), 0, 0)
    masks = np.random.default_rng(0).random((50, train.n_features)) < 0.5

    def work():
        obj = WrapperObjective(train, val, cache=False, use_numba=use_numba)
        for m in masks:
            obj(m)

    return timed(work, repeats)


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    parser.add_argument("--features", type=int, default=30)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()
    if not _accel.HAS_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    print(f"{'case':>22} {'numba [ms]':>12} {'numpy [ms]':>12} {'speedup':>9}")
    for n in args.sizes:
        fast = bench_size(n, args.features, args.repeats, True)
        slow = bench_size(n, args.features, args.repeats, False)
        print(f"{f'train+classify n={n}':>22} {fast * 1e3:12.3f} {slow * 1e3:12.3f} {slow / fast:9.1f}")
    fast = bench_wrapper(args.repeats, True)
    slow = bench_wrapper(args.repeats, False)
    print(f"{'wine wrapper x50':>22} {fast * 1e3:12.3f} {slow * 1e3:12.3f} {slow / fast:9.1f}")


if __name__ == "__main__":
    main()
