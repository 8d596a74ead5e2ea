"""Compare the compiled and pure-Python eigensolver kernels.

Usage: python benchmarks/bench_kernels.py [--points 2048 4096] [--k 4] [--repeat 3]

Builds the m=1 extended radial oscillator (lambda=6, omega=1), then times
bisection and inverse iteration with each backend and checks that both
produce the same eigenvalues.
"""

import argparse
import time

import numpy as np

from calogero_eop import kernels, numverify
from calogero_eop.families import Couplings, radial_potential


def radial_matrix(npoints):
    c = Couplings(omega=1.0, g=4.0, f1=0.0, m=1, p=1)
    grid = numverify.radial_grid(c, 6.0, npoints, 3)
    return numverify.discretize(lambda r: radial_potential(c, 6.0, r), grid)


def time_backend(mod, mat, k, repeat):
    d, e = mat.diag, mat.off
    e2 = e * e
    rad = np.zeros(len(d))
    rad[:-1] += np.abs(e)
    rad[1:] += np.abs(e)
    lo, hi = float(np.min(d - rad)), float(np.max(d + rad))
    best_bis = best_inv = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        vals, _ = mod.bisect_lowest(d, e2, k, lo, hi, 0.0, 400)
        t1 = time.perf_counter()
        x = np.ones(len(d))
        for lam in vals:
            for _ in range(3):
                x = mod.solve_shifted(d, e, float(lam), x)
                x /= np.linalg.norm(x)
        t2 = time.perf_counter()
        best_bis = min(best_bis, t1 - t0)
        best_inv = min(best_inv, t2 - t1)
    return np.asarray(vals), best_bis, best_inv


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--points", type=int, nargs="+", default=[2048, 4096])
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = ["python"]
    try:
        kernels.get_backend("cython")
        backends.insert(0, "cython")
    except ImportError:
        print("compiled core not built; timing the Python fallback only")
    print(f"{'points':>7} {'backend':>8} {'bisect [s]':>11} {'inverse [s]':>12} {'max |dE|':>10}")
    for n in args.points:
        mat = radial_matrix(n)
        ref = None
        for name in backends:
            vals, tb, ti = time_backend(kernels.get_backend(name), mat, args.k, args.repeat)
            ref = vals if ref is None else ref
            print(f"{n:>7} {name:>8} {tb:>11.4f} {ti:>12.4f} {np.max(np.abs(vals - ref)):>10.2e}")


if __name__ == "__main__":
    main()
