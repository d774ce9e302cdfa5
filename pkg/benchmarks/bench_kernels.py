"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py --n 100000 --repeat 5
"""

import argparse
import time

import numpy as np

from splitrec import kernels


def _inputs(n, seed):
    rng = np.random.default_rng(seed)

    def disk(r):
        return r * np.sqrt(rng.random(n)) * np.exp(2j * np.pi * rng.random(n))

    return {
        "a": disk(0.05) - 2 * np.cos(0.06),
        "b": np.ones(n, complex),
        "f": np.zeros(n, complex),
        "t": [disk(0.5) for _ in range(5)],
        "s": [disk(0.6) for _ in range(6)],
    }


def _cases(backend, x, n):
    def cauchy():
        out = np.zeros(n, complex)
        out[:2] = 1.0, 1.0
        backend.cauchy_sweep(x["a"], x["b"], x["f"], out)

    def transfer():
        y1 = np.zeros(n + 1, complex)
        y2 = np.zeros(n + 1, complex)
        y1[0] = 1.0
        backend.transfer_sweep(*x["t"], y1, y2, 1e100, np.inf)

    def riccati():
        out = np.zeros(n, complex)
        out[0] = np.exp(0.06j)
        backend.riccati_forward_sweep(x["a"], x["b"], out, 1e6, 1e-12)

    def scatter():
        p = [np.zeros(n + 1, complex) for _ in range(6)]
        backend.cascade_prefix(*x["s"], *p, 1e-14)
        y1 = np.zeros(n + 1, complex)
        y2 = np.zeros(n + 1, complex)
        s = x["s"]
        backend.scatter_backsub(s[0], s[1], s[4], p[2], p[3], p[5], 1.0 + 0j, 0j, y1, y2)

    return {"cauchy": cauchy, "transfer": transfer, "riccati": riccati, "scatter": scatter}


def best_of(fn, repeat):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100_000, help="steps per sweep")
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    x = _inputs(args.n, args.seed)
    py = _cases(kernels.python_backend, x, args.n)
    cy = _cases(kernels.compiled_backend, x, args.n) if kernels.compiled_backend else None
    print(f"n={args.n} repeat={args.repeat} active backend={kernels.BACKEND}")
    print(f"{'kernel':<10}{'python [ms]':>14}{'cython [ms]':>14}{'speedup':>10}")
    for name, fn in py.items():
        tp = best_of(fn, args.repeat)
        if cy is None:
            print(f"{name:<10}{tp * 1e3:>14.2f}{'n/a':>14}{'n/a':>10}")
            continue
        tc = best_of(cy[name], args.repeat)
        print(f"{name:<10}{tp * 1e3:>14.2f}{tc * 1e3:>14.2f}{tp / tc:>9.1f}x")


if __name__ == "__main__":
    main()
