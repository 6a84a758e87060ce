"""Compiled vs numpy fallback kernels: timing and bit-equality.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from dlcbounds.kernels import _pykernels as py

try:
    from dlcbounds.kernels import _ckernels as cy
except ImportError:  # pragma: no cover
    cy = None


def cases(rng):
    a = rng.random(2000)
    b = rng.random(300)
    logs = np.cumsum(np.sort(rng.normal(0, 0.01, 20000))[::-1])
    lc = np.exp(logs - logs.max())
    ps = rng.random(3000)
    return [
        ("convolve 2000x300", "convolve", (a, b)),
        ("window_max n=20000 w=25", "window_max", (lc / lc.sum(), 25)),
        ("log_concavity_defect n=20000", "log_concavity_defect", (lc, 1e-300)),
        ("poisson_binomial n=3000", "poisson_binomial", (ps,)),
    ]


def same(x, y):
    if isinstance(x, tuple):
        return all(same(a, b) for a, b in zip(x, y))
    return np.array_equal(np.asarray(x), np.asarray(y))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':<32}{'python ms':>12}{'cython ms':>12}{'speedup':>10}  identical")
    for label, name, fargs in cases(rng):
        fp = getattr(py, name)
        tp = min(timeit.repeat(lambda: fp(*fargs), number=1, repeat=args.repeat)) * 1e3
        if cy is None:
            print(f"{label:<32}{tp:>12.3f}{'n/a':>12}{'':>10}  -")
            continue
        fc = getattr(cy, name)
        tc = min(timeit.repeat(lambda: fc(*fargs), number=1, repeat=args.repeat)) * 1e3
        print(f"{label:<32}{tp:>12.3f}{tc:>12.3f}{tp / tc:>9.1f}x  {same(fp(*fargs), fc(*fargs))}")


if __name__ == "__main__":
    main()
