#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot kernels on representative workloads and prints a
timing table.  Usage:

    python benchmarks/bench_kernels.py
"""

import importlib
import math
import time

import numpy as np

from qwave import _kernels_py


def _load_backends():
    backends = [("pure-python", _kernels_py)]
    try:
        compiled = importlib.import_module("qwave._kernels")
        backends.append(("compiled", compiled))
    except ImportError:
        print("compiled kernels not built; benchmarking the fallback only")
    return backends


def time_call(fn, repeat=3):
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_mode_cos_sum(mod):
    weights = 0.999 ** np.arange(1, 10_001) / np.arange(1, 10_001)
    def run():
        acc = 0.0
        for k in range(200):
            acc += mod.mode_cos_sum(weights, 0.3 + 1e-3 * k, 2.1 - 1e-3 * k)
        return acc
    return time_call(run)


def bench_rk4_mode(mod):
    n = 8
    w0 = math.pi * n
    steps = 60_000
    f = np.empty(steps + 1, dtype=complex)
    g = np.empty(steps + 1, dtype=complex)
    def run():
        f[0] = np.exp(-1j * w0 * (-4.5)) / math.sqrt(2.0 * w0)
        g[0] = -1j * w0 * f[0]
        mod.rk4_tanh_mode((math.pi * n) ** 2, -0.18, 0.82, 0.5, -4.5, 9.0 / steps,
                          steps, f, g)
    return time_call(run)


def bench_rk4_ladder(mod):
    N = 128
    m = N + 1
    dx = 1.0 / m
    x = (np.arange(1, m + 1) - 0.5) * dx
    Q0 = np.cos(math.pi * x)
    G0 = np.zeros(N)
    steps, rec = 10_000, 100
    n_rec = steps // rec + 1
    q = np.empty((n_rec, m))
    g = np.empty((n_rec, N))
    t = np.empty(n_rec)
    def run():
        mod.rk4_ladder(Q0, G0, dx, 1.0, 0, 1.0, 1.0, 1.0, 0.0, 0.002, steps, rec,
                       q, g, t)
    return time_call(run)


BENCHES = [
    ("mode_cos_sum (200 x 10k terms)", bench_mode_cos_sum),
    ("rk4_tanh_mode (60k steps)", bench_rk4_mode),
    ("rk4_ladder (N=128, 10k steps)", bench_rk4_ladder),
]


def main():
    backends = _load_backends()
    results = {}
    for name, mod in backends:
        for label, bench in BENCHES:
            results[(label, name)] = bench(mod)
    width = max(len(label) for label, _ in BENCHES)
    header = f"{'kernel':<{width}}  " + "".join(f"{name:>14}" for name, _ in backends)
    print(header)
    for label, _ in BENCHES:
        row = f"{label:<{width}}  "
        for name, _ in backends:
            row += f"{results[(label, name)] * 1e3:>12.2f}ms"
        if len(backends) == 2:
            speedup = results[(label, backends[0][0])] / results[(label, backends[1][0])]
            row += f"   x{speedup:.1f}"
        print(row)


if __name__ == "__main__":
    main()
