"""Model-free Nash-equilibrium seeking for three-spacecraft pointing acquisition.

Library layout:

* :mod:`lisa_pointing.game`    - measurement model, objectives, initial conditions
* :mod:`lisa_pointing.seeker`  - per-spacecraft randomized equilibrium seeker
* :mod:`lisa_pointing.plant`   - first-order closed-loop reference tracking
* :mod:`lisa_pointing.harness` - seeded Monte-Carlo campaigns and statistics
* :mod:`lisa_pointing.config`  - run configuration parsing and validation
* :mod:`lisa_pointing.cli`     - ``lisa-pointing`` command-line front end
"""

from __future__ import annotations

__version__ = "0.1.0"

from .game import (
    PAIRS,
    PLAYERS,
    STATE_DIM,
    GameConfig,
    GroundTruth,
    is_on_ne_manifold,
    measure_misalignment,
    objective,
    sample_initial_conditions,
)
from .harness import (
    CampaignSummary,
    NonConvergenceError,
    RealizationResult,
    compute_t_star,
    derive_realization_seeds,
    run_ablation,
    run_campaign,
    run_realization,
    summarize,
)
from .plant import PlantParams, PlantState, plant_step, tracking_residual
from .seeker import (
    SeekerParams,
    SeekerState,
    box_bound,
    exploration_radius,
    gradient_estimate_onepoint,
    gradient_estimate_residual,
    has_converged,
    project_box,
    sample_unit_sphere,
    seeker_step,
    step_size,
    update_mean,
)

__all__ = [
    "__version__",
    "STATE_DIM",
    "PLAYERS",
    "PAIRS",
    "GameConfig",
    "GroundTruth",
    "measure_misalignment",
    "objective",
    "sample_initial_conditions",
    "is_on_ne_manifold",
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
    "PlantParams",
    "PlantState",
    "plant_step",
    "tracking_residual",
    "RealizationResult",
    "CampaignSummary",
    "NonConvergenceError",
    "derive_realization_seeds",
    "run_realization",
    "run_campaign",
    "run_ablation",
    "compute_t_star",
    "summarize",
]
