"""Per-spacecraft equilibrium seeker: randomized references, payoff-only updates.

One seeker owns one spacecraft's reference. Each round it observes a single
scalar payoff (its own misalignment objective evaluated at the previous joint
reference), forms a gradient estimate from the payoff residual along the
previous random probe direction, applies a momentum step projected onto a
slowly opening box, and emits the next reference as mean-plus-probe:
``u_k = mu_k + r_k * zeta_k`` with ``zeta_k`` uniform on the unit sphere.

Two variants are supported:

* ``"full"``      - residual-feedback gradient estimate plus momentum;
* ``"baseline"``  - one-point gradient estimate, no momentum (the ablation),
                    with identical schedules and probe draws.

All state is explicit and updates are pure, so a seeker can be stepped from
any worker as long as the state and RNG stream are owned by one realization.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .game import STATE_DIM, _norm4

__all__ = [
    "VARIANTS",
    "SeekerParams",
    "SeekerState",
    "exploration_radius",
    "step_size",
    "box_bound",
    "sample_unit_sphere",
    "gradient_estimate_residual",
    "gradient_estimate_onepoint",
    "project_box",
    "update_mean",
    "seeker_step",
    "has_converged",
]

VARIANTS = ("full", "baseline")


@dataclass(frozen=True)
class SeekerParams:
    """Tuning constants for one seeker.

    Schedules follow inverse power laws in the iteration count: probe radius
    ``r_k = gamma_r / k**a_r`` and step size ``eta_k = gamma_eta / k**a_eta``.
    The box half-width grows from ``b0`` toward ``b_final`` as
    ``b_k = beta**k * b0 + (1 - beta**k) * b_final``, which damps early
    reference swings; ``beta`` close to 1 opens the box slowly. ``b0`` may be
    negative (it is derived from the initial payoff and can dip below zero
    when the start is worse than the normalization scale), in which case the
    box is treated as degenerate at the origin until the bound turns positive.
    """

    gamma_r: float = 0.58
    a_r: float = 0.5
    gamma_eta: float = 0.315
    a_eta: float = 0.5
    rho: float = 0.93
    beta: float = 0.99
    b_final: float = 4.5
    b0: float = 0.3
    epsilon: float = 1e-6
    variant: str = "full"

    def validate(self) -> None:
        for name in ("gamma_r", "a_r", "gamma_eta", "a_eta"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not 0 <= self.rho < 1:
            raise ValueError("rho must lie in [0,1)")
        if not 0 <= self.beta < 1:
            raise ValueError("beta must lie in [0,1)")
        if not self.b_final > 0:
            raise ValueError("b_final must be positive")
        if self.b0 > self.b_final:
            raise ValueError("b0 must not exceed b_final")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")


def _zeros() -> np.ndarray:
    return np.zeros(STATE_DIM, dtype=np.float64)


@dataclass(frozen=True)
class SeekerState:
    """Evolving memory of one seeker.

    Holds the current and previous means, the previous probe direction and
    payoff (both needed one step later by the residual estimate), the last
    emitted reference, and the iteration counter. ``initial()`` encodes the
    convention ``mu_0 = mu_{-1} = 0`` with ``u_0 = mu_0``.
    """

    mu: np.ndarray = field(default_factory=_zeros)
    mu_prev: np.ndarray = field(default_factory=_zeros)
    zeta_prev: np.ndarray = field(default_factory=_zeros)
    h_prev: float = 0.0
    u_current: np.ndarray = field(default_factory=_zeros)
    k: int = 0

    @classmethod
    def initial(cls) -> "SeekerState":
        return cls()


def exploration_radius(k: int, p: SeekerParams) -> float:
    """Probe radius ``r_k = gamma_r / k**a_r`` (murad), defined for k >= 1."""
    if k < 1:
        raise ValueError("exploration_radius is undefined for k < 1")
    return p.gamma_r * float(k) ** (-p.a_r)


def step_size(k: int, p: SeekerParams) -> float:
    """Gradient step ``eta_k = gamma_eta / k**a_eta``, defined for k >= 1."""
    if k < 1:
        raise ValueError("step_size is undefined for k < 1")
    return p.gamma_eta * float(k) ** (-p.a_eta)


def box_bound(k: int, p: SeekerParams) -> float:
    """Box half-width at iteration ``k``: ``beta**k * b0 + (1-beta**k) * b_final``."""
    if k < 0:
        raise ValueError("box_bound is undefined for k < 0")
    bk = p.beta ** float(k)
    return bk * p.b0 + (1.0 - bk) * p.b_final


def sample_unit_sphere(rng: np.random.Generator) -> np.ndarray:
    """Uniform draw from the unit sphere in the decision space.

    A vector of independent standard normals is normalized, which is
    rotation-invariant by construction and rejection-free.
    """
    z = rng.standard_normal(STATE_DIM)
    return z / _norm4(z)


def gradient_estimate_residual(
    h_now: float, h_prev: float, r_k: float, zeta_k: np.ndarray
) -> np.ndarray:
    """Residual-feedback gradient estimate ``(d/r_k) * (h_now - h_prev) * zeta_k``.

    Uses the difference of two consecutive payoff observations along the
    probe that produced ``h_now``; the dimension factor is the per-spacecraft
    decision dimension. Unbiased for the gradient of the sphere-smoothed
    payoff, with lower variance than the one-evaluation form once successive
    payoffs are close.
    """
    if not r_k > 0:
        raise ValueError("r_k must be positive")
    coef = (STATE_DIM / r_k) * (h_now - h_prev)
    return coef * np.asarray(zeta_k, dtype=np.float64)


def gradient_estimate_onepoint(h_now: float, r_k: float, zeta_k: np.ndarray) -> np.ndarray:
    """One-evaluation gradient estimate ``(d/r_k) * h_now * zeta_k`` (ablation)."""
    if not r_k > 0:
        raise ValueError("r_k must be positive")
    coef = (STATE_DIM / r_k) * h_now
    return coef * np.asarray(zeta_k, dtype=np.float64)


def project_box(v: np.ndarray, bound: float) -> np.ndarray:
    """Euclidean projection onto the box ``[-bound, bound]^4`` (componentwise clamp)."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    return np.clip(np.asarray(v, dtype=np.float64), -bound, bound)


def update_mean(
    state: SeekerState, g: np.ndarray, eta_k: float, p: SeekerParams, k: int
) -> np.ndarray:
    """Momentum step on the mean, projected onto the iteration-k box.

    Computes ``Pi_k(mu - eta_k * g + rho * (mu - mu_prev))``; the baseline
    variant drops the momentum term. A nonpositive box bound degenerates the
    box to the origin.
    """
    bound = max(box_bound(k, p), 0.0)
    if p.variant == "baseline" or p.rho == 0.0:
        candidate = state.mu - eta_k * g
    else:
        candidate = state.mu - eta_k * g + p.rho * (state.mu - state.mu_prev)
    return project_box(candidate, bound)


def seeker_step(
    state: SeekerState, h_now: float, p: SeekerParams, rng: np.random.Generator
) -> tuple[SeekerState, np.ndarray]:
    """Advance one iteration given the payoff observed at the previous reference.

    ``h_now`` must be the objective value at ``u_{k-1}`` (the reference this
    seeker emitted last). The first call bootstraps with ``h_prev := h_now``
    so the residual - and with it the whole gradient term - vanishes and the
    first move is pure exploration; the undefined ``r_0``/``eta_0`` are never
    evaluated. Returns the new state and the next reference
    ``u_k = mu_k + r_k * zeta_k``.
    """
    k_new = state.k + 1
    if state.k == 0:
        g = _zeros()
        eta_prev = 0.0
    else:
        r_prev = exploration_radius(state.k, p)
        eta_prev = step_size(state.k, p)
        if p.variant == "baseline":
            g = gradient_estimate_onepoint(h_now, r_prev, state.zeta_prev)
        else:
            g = gradient_estimate_residual(h_now, state.h_prev, r_prev, state.zeta_prev)
    mu_new = update_mean(state, g, eta_prev, p, k_new)
    zeta_new = sample_unit_sphere(rng)
    u_new = mu_new + exploration_radius(k_new, p) * zeta_new
    new_state = replace(
        state,
        mu=mu_new,
        mu_prev=state.mu,
        zeta_prev=zeta_new,
        h_prev=h_now,
        u_current=u_new,
        k=k_new,
    )
    return new_state, u_new


def has_converged(h_now: float, h_prev: float, epsilon: float) -> bool:
    """Stopping test: consecutive payoffs closer than ``epsilon`` (strict)."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    return abs(h_now - h_prev) < epsilon
