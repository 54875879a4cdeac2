"""Compare the compiled and numpy integrand kernels.

Run with ``python3 benchmarks/bench_kernels.py``. Prints the best-of-5 time per
call for each backend and dimension, and the largest disagreement between them.
"""

import argparse
import timeit

import numpy as np

from retrodict import _pykernels

try:
    from retrodict import _ckernels
except ImportError:
    _ckernels = None


def _inputs(d, n, seed):
    rng = np.random.default_rng(seed)
    m = rng.dirichlet(np.ones(d), size=d).T
    g1 = rng.dirichlet(np.ones(d), size=n)
    g2 = rng.dirichlet(np.ones(d), size=n)
    return m, g1, g2


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=2000)
    parser.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 8])
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels are not built; only the numpy backend is available")
    print(f"{'kernel':<25}{'d':>3}{'numpy ms':>11}{'cython ms':>11}{'speedup':>9}{'max |diff|':>12}")
    for name in ("disagreement_batch", "divergence_change_batch"):
        for d in args.dims:
            m, g1, g2 = _inputs(d, args.pairs, args.seed)
            py = getattr(_pykernels, name)
            t_py = min(timeit.repeat(lambda: py(m, g1, g2), number=5, repeat=5)) / 5
            row = f"{name:<25}{d:>3}{t_py * 1e3:>11.3f}"
            if _ckernels is not None:
                cy = getattr(_ckernels, name)
                t_cy = min(timeit.repeat(lambda: cy(m, g1, g2), number=5, repeat=5)) / 5
                diff = np.max(np.abs(py(m, g1, g2) - cy(m, g1, g2)))
                row += f"{t_cy * 1e3:>11.3f}{t_py / t_cy:>9.1f}{diff:>12.2e}"
            print(row)


if __name__ == "__main__":
    main()
