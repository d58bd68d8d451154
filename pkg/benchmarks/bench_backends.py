#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Runs the four hot primitives (periodized image sums, Legendre and
Chebyshev-U zonal sums, the solid-harmonic Y_lm table) on sizes typical
of the resolution-of-identity quadratures and reports timings for both
backends plus the worst cross-backend deviation.

Usage: python3 benchmarks/bench_backends.py [--n 20000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from spherecs import _accel
from spherecs._accel import _numpy_impl


def _time(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=20000, help="points per call")
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    try:
        nb = _accel._build_numba_impl()
    except Exception as exc:  # pragma: no cover
        raise SystemExit(f"numba backend unavailable: {exc}")

    rng = np.random.default_rng(0)
    n = args.n
    theta = rng.uniform(0, np.pi, n) + 1j * rng.uniform(-1, 1, n)
    z = rng.uniform(-1, 1, n) + 1j * rng.uniform(-0.5, 0.5, n)
    coefhat = np.exp(-0.25 * np.arange(60.0))
    pts = rng.normal(size=(n, 3))
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    ax, ay, az = (np.ascontiguousarray(pts[:, i], dtype=np.complex128)
                  for i in range(3))

    cases = [
        ("image_sum (kind 0, nmax 12)", "image_sum", (theta, 0.5, 12, 0)),
        ("image_sum (kind 2, nmax 12)", "image_sum", (theta, 0.5, 12, 2)),
        ("legendre_sum (60 terms)", "legendre_sum", (z, coefhat, 0.3)),
        ("chebu_sum (60 terms)", "chebu_sum", (z, coefhat, 0.3)),
        ("ylm_table (lmax 10)", "ylm_table", (ax, ay, az, 10)),
    ]

    # warm up the jitted paths before timing
    for _, key, a in cases:
        nb[key](*a)

    print(f"{n} points per call, best of {args.repeat} runs")
    print(f"{'primitive':34s} {'numpy':>10s} {'numba':>10s} "
          f"{'speedup':>8s} {'max |diff|':>11s}")
    for label, key, a in cases:
        t_np, out_np = _time(_numpy_impl[key], a, args.repeat)
        t_nb, out_nb = _time(nb[key], a, args.repeat)
        dev = float(np.max(np.abs(np.asarray(out_np) - np.asarray(out_nb))))
        print(f"{label:34s} {t_np * 1e3:8.2f}ms {t_nb * 1e3:8.2f}ms "
              f"{t_np / t_nb:7.2f}x {dev:11.2e}")


if __name__ == "__main__":
    main()
