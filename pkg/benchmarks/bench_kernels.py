"""Benchmark the numba kernels against the pure-numpy fallbacks.

Run with: python3 benchmarks/bench_kernels.py
"""

import math
import time

import numpy as np

from idqm._kernels import (
    _phi21_sum_loop,
    _phi21_sum_numpy,
    _quad_sum_loop,
    _quad_sum_numpy,
)

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False


def _bench(fn, args, repeat=200):
    fn(*args)  # warm-up (JIT compile)
    t0 = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    return (time.perf_counter() - t0) / repeat


def main():
    rows = []

    # quadrature kernel: a realistic tanh-sinh node set
    n = 1600
    s = np.linspace(-14.0, 14.0, n)
    w = np.exp(-np.abs(s)) * 0.01
    qargs = (s, w.astype(complex), 0.5, 0.2, 0.7, 0.25)
    impls = [("quad_sum numpy", _quad_sum_numpy, qargs)]
    if HAVE_NUMBA:
        impls.append(("quad_sum numba", njit(cache=True)(_quad_sum_loop), qargs))

    # series kernel: slowly converging 2phi1 at |q| = 1
    q = complex(math.cos(0.4), -math.sin(0.4))
    pargs = (0.8 + 0.1j, 0.5 - 0.2j, 1.3 + 0.0j, q, 0.55 + 0.1j, 1e-12, 20000)
    impls.append(("phi21_sum numpy", _phi21_sum_numpy, pargs))
    if HAVE_NUMBA:
        impls.append(("phi21_sum numba", njit(cache=True)(_phi21_sum_loop), pargs))

    for name, fn, args in impls:
        rows.append((name, _bench(fn, args)))

    width = max(len(r[0]) for r in rows)
    for name, dt in rows:
        print(f"{name:<{width}}  {dt * 1e6:10.1f} us/call")
    if HAVE_NUMBA:
        for base in ("quad_sum", "phi21_sum"):
            t_np = next(dt for n_, dt in rows if n_ == f"{base} numpy")
            t_nb = next(dt for n_, dt in rows if n_ == f"{base} numba")
            print(f"{base}: numba speedup x{t_np / t_nb:.1f}")


if __name__ == "__main__":
    main()
