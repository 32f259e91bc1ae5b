"""Equivalence of the compiled kernels and the pure-Python fallback."""

import importlib
import math
import os

import numpy as np
import pytest

from qwave import _kernels_py as pure
from qwave._backend import backend_name, kernels

compiled = None
try:
    compiled = importlib.import_module("qwave._kernels")
except ImportError:
    pass

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels unavailable")


def test_backend_selected():
    assert backend_name() in ("compiled", "pure-python")
    forced_pure = os.environ.get("QWAVE_PURE_PYTHON", "").strip() not in ("", "0")
    if compiled is not None and not forced_pure:
        assert backend_name() == "compiled"


def test_mode_cos_sum_matches_direct(rng):
    w = rng.standard_normal(5000) * 0.999 ** np.arange(1, 5001)
    a1, a2 = 0.37, 2.11
    n = np.arange(1, 5001)
    direct = float(np.sum(w * np.cos(n * a1) * np.cos(n * a2)))
    assert abs(kernels.mode_cos_sum(w, a1, a2) - direct) < 1e-10


@needs_compiled
def test_mode_cos_sum_backends_agree(rng):
    w = rng.standard_normal(20_000) * 0.999 ** np.arange(1, 20_001)
    for a1, a2 in ((0.3, 1.7), (2.9, -0.4), (0.0, 3.1), (math.pi, 0.5)):
        c = compiled.mode_cos_sum(w, a1, a2)
        p = pure.mode_cos_sum(w, a1, a2)
        assert abs(c - p) < 1e-9


def _run_mode(mod, n_steps):
    w0 = 4.0 * math.pi
    f = np.empty(n_steps + 1, dtype=complex)
    g = np.empty(n_steps + 1, dtype=complex)
    f[0] = np.exp(-1j * w0 * (-4.0)) / math.sqrt(2.0 * w0)
    g[0] = -1j * w0 * f[0]
    mod.rk4_tanh_mode((4.0 * math.pi) ** 2, -0.18, 0.82, 0.5, -4.0, 8.0 / n_steps,
                      n_steps, f, g)
    return f, g


@needs_compiled
def test_rk4_tanh_mode_backends_bit_identical():
    f_c, g_c = _run_mode(compiled, 4000)
    f_p, g_p = _run_mode(pure, 4000)
    assert np.array_equal(f_c, f_p)
    assert np.array_equal(g_c, g_p)


def _run_ladder(mod):
    N = 24
    m = N + 1
    dx = 1.0 / m
    x = (np.arange(1, m + 1) - 0.5) * dx
    Q0 = np.cos(math.pi * x)
    G0 = np.zeros(N)
    n_steps, rec = 1500, 5
    n_rec = n_steps // rec + 1
    q = np.empty((n_rec, m))
    g = np.empty((n_rec, N))
    t = np.empty(n_rec)
    mod.rk4_ladder(Q0, G0, dx, 1.0, 1, 1.0, 0.8, 0.5, -2.0, 0.003, n_steps, rec, q, g, t)
    return q, g, t


@needs_compiled
def test_rk4_ladder_backends_bit_identical():
    q_c, g_c, t_c = _run_ladder(compiled)
    q_p, g_p, t_p = _run_ladder(pure)
    assert np.array_equal(q_c, q_p)
    assert np.array_equal(g_c, g_p)
    assert np.array_equal(t_c, t_p)


def test_kernels_deterministic():
    f1, g1 = _run_mode(kernels, 2000)
    f2, g2 = _run_mode(kernels, 2000)
    assert np.array_equal(f1, f2)
    assert np.array_equal(g1, g2)
