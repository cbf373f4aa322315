"""Shared test oracles: batched objectives, smoothing oracle, reference loop.

Everything here is deliberately independent of the library's hot path: the
batched objective uses ``numpy.linalg.norm``, the smoothed gradient is a
finite difference of a Monte-Carlo average, and the reference realization
composes the public per-step operations instead of the compiled kernel.
"""

from __future__ import annotations

from dataclasses import replace

import numpy as np

from lisa_pointing import PAIRS, GameConfig, GroundTruth, measure_misalignment
from lisa_pointing.game import objective, sample_initial_conditions
from lisa_pointing.harness import _initial_box_bounds
from lisa_pointing.plant import PlantState, plant_step
from lisa_pointing.seeker import SeekerState, seeker_step

#: Fixed hidden errors for the quadratic-game estimator checks (pairwise < 9).
FIXED_TRUTH = GroundTruth(
    np.array(
        [
            [3.0, -2.0, 1.0, 2.0],
            [-2.0, 1.0, 3.0, -1.0],
            [1.0, 3.0, -2.0, 0.0],
        ]
    )
)


def objective_batch(i: int, u: np.ndarray, truth: GroundTruth, cfg: GameConfig) -> np.ndarray:
    """Player-i objective over a batch of joint references, shape (..., 3, 4)."""
    u = np.asarray(u, dtype=np.float64)
    t = truth.delta_x0
    total = 0.0
    for j in (1, 2, 3):
        if j == i:
            continue
        d = (u[..., i - 1, :] - u[..., j - 1, :]) - (t[i - 1] - t[j - 1])
        total = total + np.sum(d * d, axis=-1)
    return cfg.weight * total


def sample_sphere_batch(rng: np.random.Generator, n: int, dim: int = 4) -> np.ndarray:
    z = rng.standard_normal((n, dim))
    return z / np.linalg.norm(z, axis=-1, keepdims=True)


def sample_ball_batch(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    z = rng.standard_normal((n, dim))
    z /= np.linalg.norm(z, axis=-1, keepdims=True)
    radii = rng.random(n) ** (1.0 / dim)
    return radii[:, None] * z


def smoothed_gradient_fd(
    i: int,
    mu: np.ndarray,
    r: float,
    truth: GroundTruth,
    cfg: GameConfig,
    rng: np.random.Generator,
    n_samples: int = 200_000,
    delta: float = 0.05,
) -> np.ndarray:
    """Central finite differences of the ball-smoothed objective.

    The smoothed objective averages the payoff over a uniform perturbation of
    the *joint* reference on the 12-dimensional unit ball, scaled by ``r``;
    the same perturbation sample is reused at every evaluation point so the
    differences are not drowned by Monte-Carlo noise.
    """
    xi = sample_ball_batch(rng, n_samples, dim=12).reshape(n_samples, 3, 4)

    def h_tilde(mu_eval: np.ndarray) -> float:
        return float(objective_batch(i, mu_eval + r * xi, truth, cfg).mean())

    grad = np.empty(4)
    for c in range(4):
        up, down = mu.copy(), mu.copy()
        up[i - 1, c] += delta
        down[i - 1, c] -= delta
        grad[c] = (h_tilde(up) - h_tilde(down)) / (2.0 * delta)
    return grad


def draw_gradient_estimates(
    i: int,
    mu: np.ndarray,
    r: float,
    h_prev: float,
    truth: GroundTruth,
    cfg: GameConfig,
    rng: np.random.Generator,
    n: int,
    chunk: int = 200_000,
):
    """Residual and one-point estimates over ``n`` fresh probe draws.

    Returns ``(sum_res, sumsq_res, sum_1p, sumsq_1p, raw)`` where the sums
    accumulate means and second moments componentwise and ``raw`` holds the
    last chunk's per-draw estimates (for bootstrap use pick ``n <= chunk``).
    """
    dim = 4
    sum_res = np.zeros(dim)
    sumsq_res = np.zeros(dim)
    sum_1p = np.zeros(dim)
    sumsq_1p = np.zeros(dim)
    raw_res = raw_1p = None
    remaining = n
    while remaining > 0:
        m = min(chunk, remaining)
        zeta = sample_sphere_batch(rng, m * 3).reshape(m, 3, 4)
        u = mu[None, :, :] + r * zeta
        h = objective_batch(i, u, truth, cfg)
        g_res = (4.0 / r) * (h - h_prev)[:, None] * zeta[:, i - 1, :]
        g_1p = (4.0 / r) * h[:, None] * zeta[:, i - 1, :]
        sum_res += g_res.sum(axis=0)
        sumsq_res += (g_res * g_res).sum(axis=0)
        sum_1p += g_1p.sum(axis=0)
        sumsq_1p += (g_1p * g_1p).sum(axis=0)
        raw_res, raw_1p = g_res, g_1p
        remaining -= m
    return sum_res, sumsq_res, sum_1p, sumsq_1p, (raw_res, raw_1p)


def total_variance(sum_g: np.ndarray, sumsq_g: np.ndarray, n: int) -> float:
    mean = sum_g / n
    return float((sumsq_g / n - mean * mean).sum())


def reference_realization(seed, params, game, plant_p, K, ideal_tracking=False):
    """Op-by-op composition of the realization loop (no compiled kernel).

    Mirrors the documented sequencing: plant tracks the previous joint
    reference, payoffs are measured at the true state, then each seeker steps
    in fixed order 1, 2, 3 on its own stream.
    """
    ss = np.random.SeedSequence(seed)
    truth_ss, s1, s2, s3 = ss.spawn(4)
    truth = sample_initial_conditions(np.random.default_rng(truth_ss), game.uc_radius)
    rngs = [np.random.default_rng(c) for c in (s1, s2, s3)]
    b0s = _initial_box_bounds(truth, game, params)
    per_player = [replace(params, b0=float(b0s[i])) for i in range(3)]
    states = [SeekerState.initial() for _ in range(3)]
    plant = PlantState.at_rest()
    u = np.zeros((3, 4))
    y_tr = np.empty((K, 3))
    h_tr = np.empty((K, 3))
    for k in range(1, K + 1):
        if ideal_tracking:
            plant = replace(plant, delta_x=u.copy(), t=plant.t + 1)
        else:
            plant = plant_step(plant, u, plant_p)
        for p, (i, j) in enumerate(PAIRS):
            y_tr[k - 1, p] = measure_misalignment(
                plant.delta_x[i - 1],
                plant.delta_x[j - 1],
                truth.delta_x0[i - 1],
                truth.delta_x0[j - 1],
            )
        h = [objective(i, plant.delta_x, truth, game) for i in (1, 2, 3)]
        h_tr[k - 1] = h
        u = u.copy()
        for i in range(3):
            states[i], u[i] = seeker_step(states[i], h[i], per_player[i], rngs[i])
    return truth, y_tr, h_tr
