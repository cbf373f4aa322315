"""Compiled inner loop for one realization.

Replicates, operation for operation, the composition of ``plant_step``,
``measure_misalignment``/``objective`` and ``seeker_step`` over K guidance
periods, with all randomness pre-drawn outside (per-player normal blocks).
The arithmetic and its order are kept identical to the plain-numpy operations
so the traces match the op-level composition bit for bit; the parity test in
the suite holds this line.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit


@njit(cache=True)
def run_realization_kernel(
    truth,  # (3, 4) hidden initial errors
    normals,  # (3, K, 4) pre-drawn standard normals, one block per player
    b0s,  # (3,) initial box half-widths
    gamma_r,
    a_r,
    gamma_eta,
    a_eta,
    rho,
    beta,
    b_final,
    w,
    decay,
    use_momentum,
    use_residual,
    ideal_tracking,
    K,
):
    mu = np.zeros((3, 4))
    mu_prev = np.zeros((3, 4))
    zeta_prev = np.zeros((3, 4))
    h_prev = np.zeros(3)
    u = np.zeros((3, 4))
    dx = np.zeros((3, 4))
    y_traces = np.empty((K, 3))
    h_traces = np.empty((K, 3))

    pair_i = (0, 0, 1)
    pair_j = (1, 2, 2)

    for k in range(1, K + 1):
        # plant tracks u_{k-1} over one guidance period (exact solution)
        for i in range(3):
            for c in range(4):
                if ideal_tracking:
                    dx[i, c] = u[i, c]
                else:
                    dx[i, c] = u[i, c] + (dx[i, c] - u[i, c]) * decay

        # pairwise misalignments measured at the true state
        y = np.empty(3)
        for p in range(3):
            i = pair_i[p]
            j = pair_j[p]
            s = 0.0
            for c in range(4):
                d = (dx[i, c] - dx[j, c]) - (truth[i, c] - truth[j, c])
                s += d * d
            y[p] = math.sqrt(s)
        h = np.empty(3)
        h[0] = w * (y[0] * y[0] + y[1] * y[1])
        h[1] = w * (y[0] * y[0] + y[2] * y[2])
        h[2] = w * (y[1] * y[1] + y[2] * y[2])
        for p in range(3):
            y_traces[k - 1, p] = y[p]
            h_traces[k - 1, p] = h[p]

        # seeker update per player, synchronous on the just-measured payoffs
        kp = k - 1
        r_k = gamma_r * float(k) ** (-a_r)
        bk = beta ** float(k)
        for i in range(3):
            bound = bk * b0s[i] + (1.0 - bk) * b_final
            if bound < 0.0:
                bound = 0.0
            if kp == 0:
                eta = 0.0
                g0 = g1 = g2 = g3 = 0.0
            else:
                r_prev = gamma_r * float(kp) ** (-a_r)
                eta = gamma_eta * float(kp) ** (-a_eta)
                if use_residual:
                    coef = (4.0 / r_prev) * (h[i] - h_prev[i])
                else:
                    coef = (4.0 / r_prev) * h[i]
                g0 = coef * zeta_prev[i, 0]
                g1 = coef * zeta_prev[i, 1]
                g2 = coef * zeta_prev[i, 2]
                g3 = coef * zeta_prev[i, 3]
            g = (g0, g1, g2, g3)
            for c in range(4):
                if use_momentum:
                    cand = mu[i, c] - eta * g[c] + rho * (mu[i, c] - mu_prev[i, c])
                else:
                    cand = mu[i, c] - eta * g[c]
                if cand > bound:
                    cand = bound
                elif cand < -bound:
                    cand = -bound
                mu_prev[i, c] = mu[i, c]
                mu[i, c] = cand

            s = 0.0
            for c in range(4):
                z = normals[i, k - 1, c]
                s += z * z
            nrm = math.sqrt(s)
            for c in range(4):
                zeta_prev[i, c] = normals[i, k - 1, c] / nrm
                u[i, c] = mu[i, c] + r_k * zeta_prev[i, c]
            h_prev[i] = h[i]

    return y_traces, h_traces
