# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see _kernels_py for the
pure-Python twin and the documented contracts)."""

import numpy as np

from libc.math cimport cos, tanh

BACKEND_NAME = "compiled"


def mode_cos_sum(double[::1] weights, double a1, double a2):
    cdef Py_ssize_t n = weights.shape[0]
    cdef double r1 = 2.0 * cos(a1)
    cdef double r2 = 2.0 * cos(a2)
    # Chebyshev recurrence for cos(k a): c_{k+1} = 2 cos(a) c_k - c_{k-1}
    cdef double c1_prev = 1.0, c1 = cos(a1)
    cdef double c2_prev = 1.0, c2 = cos(a2)
    cdef double acc = 0.0, tmp
    cdef Py_ssize_t k
    for k in range(n):
        acc += weights[k] * c1 * c2
        tmp = r1 * c1 - c1_prev
        c1_prev = c1
        c1 = tmp
        tmp = r2 * c2 - c2_prev
        c2_prev = c2
        c2 = tmp
    return acc


def rk4_tanh_mode(double k2, double gamma_minus, double gamma_plus, double tau,
                  double t0, double dt, Py_ssize_t n_steps,
                  double complex[::1] f, double complex[::1] g):
    cdef double inv_tau = 1.0 / tau
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef double fr = f[0].real, fi = f[0].imag
    cdef double gr = g[0].real, gi = g[0].imag
    cdef double t, w_a, w_h, w_b
    cdef double k1fr, k1fi, k1gr, k1gi
    cdef double k2fr, k2fi, k2gr, k2gi
    cdef double k3fr, k3fi, k3gr, k3gi
    cdef double k4fr, k4fi, k4gr, k4gi
    cdef Py_ssize_t i
    for i in range(n_steps):
        t = t0 + i * dt
        w_a = -k2 * (gamma_minus * tanh(t * inv_tau) + gamma_plus)
        w_h = -k2 * (gamma_minus * tanh((t + half) * inv_tau) + gamma_plus)
        w_b = -k2 * (gamma_minus * tanh((t + dt) * inv_tau) + gamma_plus)
        k1fr = gr; k1fi = gi
        k1gr = w_a * fr; k1gi = w_a * fi
        k2fr = gr + half * k1gr; k2fi = gi + half * k1gi
        k2gr = w_h * (fr + half * k1fr); k2gi = w_h * (fi + half * k1fi)
        k3fr = gr + half * k2gr; k3fi = gi + half * k2gi
        k3gr = w_h * (fr + half * k2fr); k3gi = w_h * (fi + half * k2fi)
        k4fr = gr + dt * k3gr; k4fi = gi + dt * k3gi
        k4gr = w_b * (fr + dt * k3fr); k4gi = w_b * (fi + dt * k3fi)
        fr += sixth * (k1fr + 2.0 * (k2fr + k3fr) + k4fr)
        fi += sixth * (k1fi + 2.0 * (k2fi + k3fi) + k4fi)
        gr += sixth * (k1gr + 2.0 * (k2gr + k3gr) + k4gr)
        gi += sixth * (k1gi + 2.0 * (k2gi + k3gi) + k4gi)
        f[i + 1] = fr + 1j * fi
        g[i + 1] = gr + 1j * gi


cdef inline double _ladder_speed_sq(int kind, double v0, double v1, double tau,
                                    double t) nogil:
    if kind == 0:
        return v0 * v0 if t < 0.0 else v1 * v1
    return 0.5 * (v1 * v1 - v0 * v0) * tanh(t / tau) + 0.5 * (v1 * v1 + v0 * v0)


cdef inline void _ladder_deriv(double[::1] Qs, double[::1] Gs, double inv_l,
                               double inv_c, double[::1] dq, double[::1] dg,
                               Py_ssize_t m, Py_ssize_t nind) nogil:
    cdef Py_ssize_t j
    dq[0] = Gs[0] * inv_l
    for j in range(1, nind):
        dq[j] = (Gs[j] - Gs[j - 1]) * inv_l
    dq[m - 1] = -Gs[nind - 1] * inv_l
    for j in range(nind):
        dg[j] = (Qs[j + 1] - Qs[j]) * inv_c


cdef inline void _stage(double[::1] Qc, double[::1] Gc, double[::1] dq,
                        double[::1] dg, double h, double[::1] outq,
                        double[::1] outg, Py_ssize_t m, Py_ssize_t nind) nogil:
    cdef Py_ssize_t j
    for j in range(m):
        outq[j] = Qc[j] + h * dq[j]
    for j in range(nind):
        outg[j] = Gc[j] + h * dg[j]


def rk4_ladder(double[::1] Q, double[::1] G, double dx, double cap, int kind,
               double v0, double v1, double tau, double t0, double dt,
               Py_ssize_t n_steps, Py_ssize_t record_every,
               double[:, ::1] Q_rec, double[:, ::1] G_rec, double[::1] t_rec):
    cdef Py_ssize_t m = Q.shape[0]       # capacitors
    cdef Py_ssize_t nind = G.shape[0]    # inductors = m - 1
    cdef double inv_c = 1.0 / cap
    cdef double l_scale = cap / (dx * dx)
    cdef double half = 0.5 * dt
    cdef double sixth = dt / 6.0

    buf = np.empty((12, m), dtype=float)
    cdef double[:, ::1] work = buf
    cdef double[::1] Qc = work[0], Gc = work[1]
    cdef double[::1] sq = work[2], sg = work[3]
    cdef double[::1] k1q = work[4], k2q = work[5], k3q = work[6], k4q = work[7]
    cdef double[::1] k1g = work[8], k2g = work[9], k3g = work[10], k4g = work[11]

    cdef Py_ssize_t i, j, rec = 0
    cdef double t, inv_l_a, inv_l_h, inv_l_b

    for j in range(m):
        Qc[j] = Q[j]
        Q_rec[0, j] = Q[j]
    for j in range(nind):
        Gc[j] = G[j]
        G_rec[0, j] = G[j]
    t_rec[0] = t0

    for i in range(n_steps):
        t = t0 + i * dt
        inv_l_a = l_scale * _ladder_speed_sq(kind, v0, v1, tau, t)
        inv_l_h = l_scale * _ladder_speed_sq(kind, v0, v1, tau, t + half)
        inv_l_b = l_scale * _ladder_speed_sq(kind, v0, v1, tau, t + dt)

        _ladder_deriv(Qc, Gc, inv_l_a, inv_c, k1q, k1g, m, nind)
        _stage(Qc, Gc, k1q, k1g, half, sq, sg, m, nind)
        _ladder_deriv(sq, sg, inv_l_h, inv_c, k2q, k2g, m, nind)
        _stage(Qc, Gc, k2q, k2g, half, sq, sg, m, nind)
        _ladder_deriv(sq, sg, inv_l_h, inv_c, k3q, k3g, m, nind)
        _stage(Qc, Gc, k3q, k3g, dt, sq, sg, m, nind)
        _ladder_deriv(sq, sg, inv_l_b, inv_c, k4q, k4g, m, nind)

        for j in range(m):
            Qc[j] += sixth * (k1q[j] + 2.0 * (k2q[j] + k3q[j]) + k4q[j])
        for j in range(nind):
            Gc[j] += sixth * (k1g[j] + 2.0 * (k2g[j] + k3g[j]) + k4g[j])

        if (i + 1) % record_every == 0:
            rec += 1
            for j in range(m):
                Q_rec[rec, j] = Qc[j]
            for j in range(nind):
                G_rec[rec, j] = Gc[j]
            t_rec[rec] = t0 + (i + 1) * dt
