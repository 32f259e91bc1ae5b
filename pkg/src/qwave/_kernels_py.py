"""Pure-Python/numpy implementations of the hot kernels.

Mirror of the compiled extension qwave._kernels; both expose the same three
functions and must produce matching results.  The package selects between
them at import time (see qwave._backend).
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "pure-python"


def mode_cos_sum(weights, a1, a2):
    """Sum of weights[n-1] * cos(n*a1) * cos(n*a2) for n = 1 .. len(weights)."""
    w = np.asarray(weights, dtype=float)
    n = np.arange(1, w.size + 1, dtype=float)
    return float(np.sum(w * np.cos(n * a1) * np.cos(n * a2)))


def rk4_tanh_mode(k2, gamma_minus, gamma_plus, tau, t0, dt, n_steps, f, g):
    """Integrate f'' = -omega^2(t) f with classic fixed-step RK4.

    omega^2(t) = k2 * (gamma_minus * tanh(t/tau) + gamma_plus).  The complex
    output arrays f (value) and g (derivative) have length n_steps + 1 and
    must carry the initial condition in slot 0; slots 1..n_steps are filled.
    """
    inv_tau = 1.0 / tau
    fc = complex(f[0])
    gc = complex(g[0])
    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(n_steps):
        t = t0 + i * dt
        w_a = -k2 * (gamma_minus * math.tanh(t * inv_tau) + gamma_plus)
        w_h = -k2 * (gamma_minus * math.tanh((t + half) * inv_tau) + gamma_plus)
        w_b = -k2 * (gamma_minus * math.tanh((t + dt) * inv_tau) + gamma_plus)
        k1f = gc
        k1g = w_a * fc
        k2f = gc + half * k1g
        k2g = w_h * (fc + half * k1f)
        k3f = gc + half * k2g
        k3g = w_h * (fc + half * k2f)
        k4f = gc + dt * k3g
        k4g = w_b * (fc + dt * k3f)
        fc = fc + sixth * (k1f + 2.0 * (k2f + k3f) + k4f)
        gc = gc + sixth * (k1g + 2.0 * (k2g + k3g) + k4g)
        f[i + 1] = fc
        g[i + 1] = gc


def _ladder_speed_sq(kind, v0, v1, tau, t):
    if kind == 0:  # sudden step
        return v0 * v0 if t < 0.0 else v1 * v1
    half_diff = 0.5 * (v1 * v1 - v0 * v0)
    half_sum = 0.5 * (v1 * v1 + v0 * v0)
    return half_diff * math.tanh(t / tau) + half_sum


def rk4_ladder(Q, G, dx, cap, kind, v0, v1, tau, t0, dt, n_steps, record_every,
               Q_rec, G_rec, t_rec):
    """Step the Kirchhoff ladder with RK4 using the flux G_j = L(t) I_j.

    State: charges Q (N+1 entries) and fluxes G (N entries) with
        dQ_1 = G_1 / L,  dQ_j = (G_j - G_{j-1}) / L,  dQ_{N+1} = -G_N / L,
        dG_j = (Q_{j+1} - Q_j) / C,
    where 1/L(t) = v^2(t) C / dx^2.  Every record_every-th state (including
    the initial one) is written into Q_rec / G_rec / t_rec.
    """
    inv_c = 1.0 / cap
    l_scale = cap / (dx * dx)  # 1/L = l_scale * v^2(t)

    def deriv(Qs, Gs, t):
        inv_l = l_scale * _ladder_speed_sq(kind, v0, v1, tau, t)
        dQ = np.empty_like(Qs)
        dQ[0] = Gs[0] * inv_l
        dQ[1:-1] = (Gs[1:] - Gs[:-1]) * inv_l
        dQ[-1] = -Gs[-1] * inv_l
        dG = (Qs[1:] - Qs[:-1]) * inv_c
        return dQ, dG

    Qc = np.array(Q, dtype=float)
    Gc = np.array(G, dtype=float)
    rec = 0
    Q_rec[rec] = Qc
    G_rec[rec] = Gc
    t_rec[rec] = t0
    half = 0.5 * dt
    sixth = dt / 6.0
    for i in range(n_steps):
        t = t0 + i * dt
        k1q, k1g = deriv(Qc, Gc, t)
        k2q, k2g = deriv(Qc + half * k1q, Gc + half * k1g, t + half)
        k3q, k3g = deriv(Qc + half * k2q, Gc + half * k2g, t + half)
        k4q, k4g = deriv(Qc + dt * k3q, Gc + dt * k3g, t + dt)
        Qc += sixth * (k1q + 2.0 * (k2q + k3q) + k4q)
        Gc += sixth * (k1g + 2.0 * (k2g + k3g) + k4g)
        if (i + 1) % record_every == 0:
            rec += 1
            Q_rec[rec] = Qc
            G_rec[rec] = Gc
            t_rec[rec] = t0 + (i + 1) * dt
