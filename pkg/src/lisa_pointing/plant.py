"""First-order closed-loop tracking of piecewise-constant references.

Between guidance updates each spacecraft's internal controller drives the
true deviation toward the commanded reference as a linear first-order system
``d(dx)/dt = (u - dx) / tau_c``. Over one guidance period ``tau_g`` that ODE
has the exact solution ``dx' = u + (dx - u) * exp(-tau_g / tau_c)``, which is
what ``plant_step`` applies componentwise - no integrator error. Time is
counted in guidance periods.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .game import STATE_DIM

__all__ = ["PlantParams", "PlantState", "plant_step", "tracking_residual"]

#: Wall-clock seconds per guidance period (light travel plus controller settling).
SECONDS_PER_ITERATION = 17.0


@dataclass(frozen=True)
class PlantParams:
    """Closed-loop time constant and guidance period, in guidance-period units.

    The guidance loop only makes sense when the controller settles well
    within one period; ``validate`` enforces ``tau_g / tau_c >= 10``.
    """

    tau_c: float = 1.0 / 17.0
    tau_g: float = 1.0

    def validate(self) -> None:
        if not self.tau_c > 0:
            raise ValueError("tau_c must be positive")
        if not self.tau_g > 0:
            raise ValueError("tau_g must be positive")
        if self.tau_g / self.tau_c < 10.0:
            raise ValueError("tau_g/tau_c must be at least 10")

    @property
    def decay(self) -> float:
        """Residual fraction of the tracking offset left after one period."""
        return math.exp(-self.tau_g / self.tau_c)


def _rest() -> np.ndarray:
    return np.zeros((3, STATE_DIM), dtype=np.float64)


@dataclass(frozen=True)
class PlantState:
    """True relative deviations of the three spacecraft at discrete time ``t``."""

    delta_x: np.ndarray = field(default_factory=_rest)
    t: int = 0

    def __post_init__(self) -> None:
        arr = np.asarray(self.delta_x, dtype=np.float64)
        if arr.shape != (3, STATE_DIM):
            raise ValueError(f"delta_x must have shape (3, {STATE_DIM})")
        if not np.isfinite(arr).all():
            raise ValueError("delta_x components must be finite")
        object.__setattr__(self, "delta_x", arr)

    @classmethod
    def at_rest(cls) -> "PlantState":
        return cls()


def plant_step(state: PlantState, u, p: PlantParams) -> PlantState:
    """Propagate one guidance period toward the references ``u`` (exactly).

    ``u`` is the (3, 4) joint reference held constant over the period. The
    new state is the closed-form solution of the first-order loop, so a
    state already at its reference is a fixed point.
    """
    u = np.asarray(u, dtype=np.float64)
    if u.shape != (3, STATE_DIM):
        raise ValueError(f"u must have shape (3, {STATE_DIM})")
    new_dx = u + (state.delta_x - u) * p.decay
    return replace(state, delta_x=new_dx, t=state.t + 1)


def tracking_residual(state: PlantState, u_prev) -> float:
    """Distance of the stacked true state from the last commanded reference.

    Called right after ``plant_step`` with the same references, this is the
    leftover tracking error over all 12 components; one period contracts it
    by exactly ``exp(-tau_g / tau_c)``.
    """
    u_prev = np.asarray(u_prev, dtype=np.float64)
    d = state.delta_x - u_prev
    return float(np.sqrt(np.sum(d * d)))
