#!/usr/bin/env python3
"""Timing comparison: Bluestein fast path vs direct quadrature.

Transforms a Gaussian-damped random field onto a same-sized output grid for
a ladder of grid sizes and reports wall times, the speedup, and the max-abs
discrepancy between the two paths.
"""
import argparse
import time

import numpy as np

from chirpspace import PhaseGrid, SampledField, forward_direct, forward_fast, make_axis


def timed(fn, repeats=1):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[64, 128, 256])
    ap.add_argument("--extent", type=float, default=6.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'n':>5} {'fast':>10} {'direct':>10} {'speedup':>8} {'max|diff|':>10}")
    for n in args.sizes:
        ax = make_axis(-args.extent, args.extent, n)
        grid = PhaseGrid(ax, ax)
        P, Q = grid.meshes()
        vals = ((rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
                * np.exp(-(P**2 + Q**2) / 2))
        h = SampledField(grid, vals)
        t_fast, f1 = timed(lambda: forward_fast(h, grid), repeats=3)
        t_dir, f2 = timed(lambda: forward_direct(h, grid))
        diff = np.abs(f1.values - f2.values).max()
        print(f"{n:>5} {t_fast * 1e3:>8.1f}ms {t_dir * 1e3:>8.1f}ms "
              f"{t_dir / t_fast:>7.0f}x {diff:>10.2e}")


if __name__ == "__main__":
    main()
