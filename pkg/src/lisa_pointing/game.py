"""Three-player pointing game: measurement model, objectives, initial conditions.

Each spacecraft carries a 4-component attitude deviation (three Euler angles
plus one telescope angle), expressed in microradians throughout. The only
observable is the pairwise beam misalignment: the norm of the difference
between the commanded relative correction and the hidden initial relative
error. All functions here are pure; random sampling takes an explicit
``numpy.random.Generator``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "STATE_DIM",
    "PLAYERS",
    "PAIRS",
    "GameConfig",
    "GroundTruth",
    "measure_misalignment",
    "objective",
    "sample_initial_conditions",
    "is_on_ne_manifold",
]

#: Per-spacecraft decision dimension (3 Euler-angle deviations + 1 telescope angle).
STATE_DIM = 4

#: 1-based spacecraft indices and the three unordered pairs, in fixed order.
PLAYERS = (1, 2, 3)
PAIRS = ((1, 2), (1, 3), (2, 3))


def _vec4(x) -> np.ndarray:
    v = np.asarray(x, dtype=np.float64)
    if v.shape != (STATE_DIM,):
        raise ValueError(f"expected a {STATE_DIM}-vector, got shape {v.shape}")
    return v


def _norm4(v: np.ndarray) -> float:
    # Explicit component order keeps the result reproducible across callers.
    return math.sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3])


@dataclass(frozen=True)
class GameConfig:
    """Static game constants.

    ``w`` normalizes the objectives by the worst achievable misalignment;
    when left as ``None`` it resolves to ``1 / uc_radius**2`` so that a
    misalignment equal to the uncertainty-cone size contributes 1.0 per pair.
    """

    uc_radius: float = 9.0
    b: float = 4.5
    w: float | None = None

    def validate(self) -> None:
        if not self.uc_radius > 0:
            raise ValueError("uc_radius must be positive")
        if not self.b > 0:
            raise ValueError("b must be positive")
        if self.w is not None and not self.w > 0:
            raise ValueError("w must be positive")

    @property
    def weight(self) -> float:
        """Objective normalization weight (1/murad^2)."""
        return self.w if self.w is not None else 1.0 / (self.uc_radius * self.uc_radius)


@dataclass(frozen=True)
class GroundTruth:
    """The three hidden initial error vectors, known only to the simulator.

    Seekers never observe these directly; they enter the simulation solely
    through the misalignment measurements.
    """

    delta_x0: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.asarray(self.delta_x0, dtype=np.float64)
        if arr.shape != (3, STATE_DIM):
            raise ValueError(f"delta_x0 must have shape (3, {STATE_DIM})")
        if not np.isfinite(arr).all():
            raise ValueError("delta_x0 components must be finite")
        object.__setattr__(self, "delta_x0", arr)

    def pairwise_misalignments(self) -> np.ndarray:
        """Initial misalignment of each pair (order: 1-2, 1-3, 2-3)."""
        d = self.delta_x0
        return np.array(
            [_norm4(d[i - 1] - d[j - 1]) for i, j in PAIRS], dtype=np.float64
        )

    def max_pairwise_misalignment(self) -> float:
        return float(self.pairwise_misalignments().max())


def measure_misalignment(a, b_vec, truth_i, truth_j) -> float:
    """Misalignment read by spacecraft i's sensor for the beam from j.

    Returns ``||(a - b_vec) - (truth_i - truth_j)||`` in microradians, i.e.
    the distance between the commanded relative correction and the hidden
    relative error. Symmetric under swapping both the references and the
    truths at once. Saturation above the uncertainty-cone size is not
    modeled; the value is an unbounded norm.
    """
    a = _vec4(a)
    b_vec = _vec4(b_vec)
    truth_i = _vec4(truth_i)
    truth_j = _vec4(truth_j)
    d = (a - b_vec) - (truth_i - truth_j)
    return _norm4(d)


def objective(i: int, u, truth: GroundTruth, cfg: GameConfig) -> float:
    """Normalized pointing objective of spacecraft ``i`` at joint references ``u``.

    ``u`` is the stacked (3, 4) array of per-spacecraft references. The value
    is ``w * (y_ij^2 + y_ik^2)`` over the two other spacecraft j < k; it is
    nonnegative and vanishes exactly when both of spacecraft i's measured
    misalignments are zero.
    """
    if i not in PLAYERS:
        raise ValueError(f"player index must be one of {PLAYERS}, got {i}")
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (3, STATE_DIM):
        raise ValueError(f"u must have shape (3, {STATE_DIM})")
    w = cfg.weight
    total = 0.0
    for j in PLAYERS:
        if j == i:
            continue
        y = measure_misalignment(
            u[i - 1], u[j - 1], truth.delta_x0[i - 1], truth.delta_x0[j - 1]
        )
        total += y * y
    return w * total


def sample_initial_conditions(rng: np.random.Generator, uc_radius: float = 9.0) -> GroundTruth:
    """Draw hidden initial errors with all pairwise distances inside the cone.

    Each vector is uniform in the ball of radius ``uc_radius / 2``, which by
    the triangle inequality already bounds every pairwise distance by
    ``uc_radius``; the explicit rejection check guards the invariant for any
    future change of proposal.
    """
    if not uc_radius > 0:
        raise ValueError("uc_radius must be positive")
    half = 0.5 * uc_radius
    while True:
        z = rng.standard_normal((3, STATE_DIM))
        norms = np.sqrt(np.sum(z * z, axis=1))
        radii = half * rng.random(3) ** (1.0 / STATE_DIM)
        pts = (radii / norms)[:, None] * z
        if all(
            _norm4(pts[i - 1] - pts[j - 1]) <= uc_radius for i, j in PAIRS
        ):
            return GroundTruth(pts)


def is_on_ne_manifold(u, truth: GroundTruth, tol: float) -> bool:
    """True when every pairwise misalignment at ``u`` is within ``tol``.

    The zero set of all objectives is the translation family
    ``u^i = delta_x0^i + c``; this predicate tests membership up to ``tol``.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (3, STATE_DIM):
        raise ValueError(f"u must have shape (3, {STATE_DIM})")
    return all(
        measure_misalignment(
            u[i - 1], u[j - 1], truth.delta_x0[i - 1], truth.delta_x0[j - 1]
        )
        <= tol
        for i, j in PAIRS
    )
