#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

The hot paths are the Lyapunov-Perron sweep (nonlinearity along the window
plus hyperbolic scans) and the scan recurrences on their own.  Run as

    python3 benchmarks/bench_backends.py [--nmax 8 16 32] [--reps 30]

BOUSS_BACKEND only selects the default backend inside the library; here both
are timed explicitly.
"""

import argparse
import time

import numpy as np

import bousskit as bk
from bousskit._backend import resolve_backend
from bousskit._quad import scan_weights
from bousskit.lpengine import LPConfig, LPEngine
from bousskit.specspace import norm_H


def _time(fun, reps):
    fun()  # warm (jit compile, caches)
    t0 = time.perf_counter()
    for _ in range(reps):
        fun()
    return (time.perf_counter() - t0) / reps


def bench_sweep(nmax: int, reps: int, backends):
    p = bk.derive_params(2, 1, 1, 1, 1, 3.0, nmax)
    t = bk.build_mode_table(p)
    cfg = LPConfig(delta=0.5, K=2, ymax=16.0, h=0.1, tail_tol=1e-4, quad="exp4")
    rows = {}
    ref = None
    for name, mod in backends.items():
        eng = LPEngine(p, t, cfg, backend=mod)
        xi = np.zeros((2, nmax + 1), dtype=complex)
        xi[0, 1] = 1.0
        xi /= norm_H(eng.state_of_center_sharp(xi))
        xi *= 1e-2
        htraj = np.zeros((eng.ny, 4, nmax + 1), dtype=complex)
        out = eng.sweep_once(xi, htraj)
        if ref is None:
            ref = out
        else:
            assert np.max(np.abs(out - ref)) < 1e-12 * max(np.max(np.abs(ref)), 1e-300), \
                "backends disagree"
        rows[name] = _time(lambda: eng.sweep_once(xi, htraj), reps)
    return rows


def bench_scan(nlanes: int, ny: int, reps: int, backends):
    rng = np.random.default_rng(0)
    g = rng.standard_normal((ny, nlanes)) + 1j * rng.standard_normal((ny, nlanes))
    beta = -(0.5 + rng.random(nlanes)) - 1j * rng.standard_normal(nlanes)
    A, Wl, Wi, Wr = scan_weights(beta, 0.1, "exp4", forward=True)
    rows = {}
    for name, mod in backends.items():
        rows[name] = _time(lambda: mod.scan(g, A, Wl, Wi, Wr, True), reps)
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, nargs="+", default=[8, 16, 32])
    ap.add_argument("--reps", type=int, default=30)
    args = ap.parse_args()

    backends = {"numpy": resolve_backend("numpy")}
    try:
        backends["numba"] = resolve_backend("numba")
    except ImportError:
        print("numba unavailable; timing the numpy path only")

    print(f"{'kernel':<22} " + " ".join(f"{n:>12}" for n in backends))
    for nmax in args.nmax:
        rows = bench_sweep(nmax, args.reps, backends)
        cells = " ".join(f"{rows[n] * 1e3:9.3f} ms" for n in backends)
        print(f"{'lp_sweep nmax=' + str(nmax):<22} " + cells)
    for nlanes, ny in ((68, 321), (260, 321)):
        rows = bench_scan(nlanes, ny, args.reps, backends)
        cells = " ".join(f"{rows[n] * 1e3:9.3f} ms" for n in backends)
        print(f"{f'scan L={nlanes} ny={ny}':<22} " + cells)
    if "numba" in backends:
        print("\n(speedups are the point: the scans are sequential recurrences "
              "numpy cannot vectorize, and at small truncations the fused numba "
              "sweep avoids all intermediate arrays)")


if __name__ == "__main__":
    main()
