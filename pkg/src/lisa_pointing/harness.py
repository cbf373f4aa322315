"""Seeded Monte-Carlo campaigns over the three-spacecraft pointing game.

A realization couples three seekers to the plant for K guidance periods:
measure pairwise misalignments at the true state, evaluate each spacecraft's
payoff, step each seeker, command the plant with the fresh references. Every
realization is reproducible from a single integer seed, and campaign seeds
are derived from a base seed and the realization index, so results do not
depend on scheduling or worker count.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np
from joblib import Parallel, delayed

from . import _kernel
from .game import PAIRS, GameConfig, GroundTruth, objective, sample_initial_conditions
from .plant import SECONDS_PER_ITERATION, PlantParams
from .seeker import SeekerParams

__all__ = [
    "RealizationResult",
    "CampaignSummary",
    "NonConvergenceError",
    "derive_realization_seeds",
    "run_realization",
    "run_campaign",
    "compute_t_star",
    "summarize",
    "nearest_rank_percentile",
]

logger = logging.getLogger(__name__)

PERCENTILE_LEVELS = (10, 50, 90)
DEFAULT_HISTOGRAM_BINS = 30

#: Fraction of the payoff-derived headroom used for the initial box half-width.
INITIAL_BOX_GAIN = 0.3


class NonConvergenceError(RuntimeError):
    """Raised when realizations never bring every pair below the threshold."""

    def __init__(self, seeds: list[int], K: int, threshold: float):
        self.seeds = list(seeds)
        self.K = K
        self.threshold = threshold
        shown = ", ".join(str(s) for s in self.seeds[:10])
        more = "" if len(self.seeds) <= 10 else f" (+{len(self.seeds) - 10} more)"
        super().__init__(
            f"{len(self.seeds)} realization(s) never reached max-pair misalignment "
            f"< {threshold} murad within K={K}: seeds {shown}{more}"
        )


@dataclass(frozen=True)
class RealizationResult:
    """Per-iteration traces of one realization.

    ``y_traces[k-1]`` holds the pairwise misalignments (orders 1-2, 1-3, 2-3)
    measured at guidance time k, i.e. at the state tracking the references of
    iteration k-1; ``h_traces`` the matching per-spacecraft payoffs.
    ``converged_iter`` is the first k with all pairs below the threshold, or
    ``None`` if that never happens within K.
    """

    seed: int
    truth: GroundTruth
    y_traces: np.ndarray
    h_traces: np.ndarray
    converged_iter: int | None
    threshold: float

    @property
    def K(self) -> int:
        return self.y_traces.shape[0]


@dataclass(frozen=True)
class CampaignSummary:
    """Aggregate statistics of a campaign, evaluated at iteration ``t_star_iter``.

    ``t_star_iter`` is normally the worst realization's first crossing of the
    threshold; for paired ablation runs it may be imposed from the reference
    campaign (``t_star_source`` says which). Percentile curves use the
    nearest-rank convention, one curve per level per pair.
    """

    n_realizations: int
    K: int
    threshold: float
    t_star_iter: int
    t_star_minutes: float
    t_star_source: str
    mean_y_at_t_star: np.ndarray  # (3,) per pair
    percentiles: dict[int, np.ndarray]  # level -> (K, 3)
    histogram_counts: np.ndarray  # (3, bins) per pair at t*
    histogram_edges: np.ndarray  # (bins + 1,)
    unconverged_seeds: tuple[int, ...] = ()


def derive_realization_seeds(base_seed: int, n: int) -> list[int]:
    """Hash the base seed and realization index into independent run seeds."""
    return [
        int(np.random.SeedSequence([base_seed, idx]).generate_state(1, np.uint64)[0])
        for idx in range(n)
    ]


def _initial_box_bounds(
    truth: GroundTruth, game: GameConfig, params: SeekerParams
) -> np.ndarray:
    """Per-spacecraft initial half-widths, derived from the payoff at rest.

    A start worse than the normalization scale makes the derived half-width
    negative; the update then treats the box as degenerate until it opens.
    """
    zeros = np.zeros((3, 4))
    h0 = np.array([objective(i, zeros, truth, game) for i in (1, 2, 3)])
    return INITIAL_BOX_GAIN * (1.0 - h0)


def run_realization(
    seed: int,
    params: SeekerParams,
    game: GameConfig,
    plant: PlantParams,
    K: int,
    threshold: float = 1.0,
    ideal_tracking: bool = False,
    use_b0_rule: bool = True,
) -> RealizationResult:
    """Simulate one realization for K guidance periods.

    The seed expands into four independent streams: one for the hidden
    initial conditions and one per seeker. With ``use_b0_rule`` (default)
    each seeker's initial box half-width is derived from its payoff at rest;
    otherwise ``params.b0`` is used verbatim for all three.
    """
    if K < 1:
        raise ValueError("K must be at least 1")
    params.validate()
    game.validate()
    plant.validate()

    ss = np.random.SeedSequence(seed)
    truth_ss, s1, s2, s3 = ss.spawn(4)
    truth = sample_initial_conditions(np.random.default_rng(truth_ss), game.uc_radius)

    normals = np.empty((3, K, 4))
    for i, child in enumerate((s1, s2, s3)):
        normals[i] = np.random.default_rng(child).standard_normal((K, 4))

    if use_b0_rule:
        b0s = _initial_box_bounds(truth, game, params)
    else:
        b0s = np.full(3, float(params.b0))

    y_traces, h_traces = _kernel.run_realization_kernel(
        truth.delta_x0,
        normals,
        b0s,
        params.gamma_r,
        params.a_r,
        params.gamma_eta,
        params.a_eta,
        params.rho,
        params.beta,
        params.b_final,
        game.weight,
        plant.decay,
        params.variant == "full" and params.rho != 0.0,
        params.variant == "full",
        ideal_tracking,
        K,
    )

    below = np.nonzero(y_traces.max(axis=1) < threshold)[0]
    converged = int(below[0]) + 1 if below.size else None
    return RealizationResult(
        seed=seed,
        truth=truth,
        y_traces=y_traces,
        h_traces=h_traces,
        converged_iter=converged,
        threshold=threshold,
    )


def run_campaign(
    n: int,
    base_seed: int,
    params: SeekerParams,
    game: GameConfig,
    plant: PlantParams,
    K: int,
    worker_count: int = 1,
    threshold: float = 1.0,
    ideal_tracking: bool = False,
    use_b0_rule: bool = True,
    bins: int = DEFAULT_HISTOGRAM_BINS,
) -> tuple[CampaignSummary, list[RealizationResult]]:
    """Run ``n`` independent realizations and aggregate them.

    Seeds are derived up front, so values and ordering are identical for any
    ``worker_count``. Realizations that never converge are excluded from the
    t* statistic with a warning and reported in the summary.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    seeds = derive_realization_seeds(base_seed, n)

    def _one(s: int) -> RealizationResult:
        return run_realization(
            s, params, game, plant, K,
            threshold=threshold,
            ideal_tracking=ideal_tracking,
            use_b0_rule=use_b0_rule,
        )

    if worker_count <= 1:
        results = [_one(s) for s in seeds]
    else:
        results = Parallel(n_jobs=worker_count)(delayed(_one)(s) for s in seeds)

    failed = [r.seed for r in results if r.converged_iter is None]
    if failed:
        logger.warning(
            "%d of %d realizations did not reach max-pair misalignment < %g "
            "within K=%d and are excluded from t*: seeds %s",
            len(failed), n, threshold, K, failed[:10],
        )
    converged = [r.converged_iter for r in results if r.converged_iter is not None]
    if not converged:
        raise NonConvergenceError(failed, K, threshold)
    t_star = max(converged)
    summary = summarize(results, t_star, threshold=threshold, bins=bins)
    return summary, results


def compute_t_star(results: list[RealizationResult], threshold: float) -> int:
    """Worst first crossing: max over realizations of the first iteration with
    every pair below ``threshold``. Raises ``NonConvergenceError`` naming the
    offending seeds if any realization never crosses.
    """
    crossings: list[int] = []
    failed: list[int] = []
    for r in results:
        below = np.nonzero(r.y_traces.max(axis=1) < threshold)[0]
        if below.size:
            crossings.append(int(below[0]) + 1)
        else:
            failed.append(r.seed)
    if failed:
        raise NonConvergenceError(failed, results[0].K if results else 0, threshold)
    return max(crossings)


def nearest_rank_percentile(values: np.ndarray, level: float, axis: int = 0) -> np.ndarray:
    """Nearest-rank percentile (no interpolation): the ceil(p*n/100)-th order statistic."""
    return np.percentile(values, level, axis=axis, method="inverted_cdf")


def summarize(
    results: list[RealizationResult],
    t_star: int,
    threshold: float = 1.0,
    bins: int = DEFAULT_HISTOGRAM_BINS,
    t_star_source: str = "self",
) -> CampaignSummary:
    """Aggregate traces into percentile curves, t*-slice means and histograms.

    Histograms cover ``[0, threshold)`` with uniform bins; values at or above
    the threshold at t* (possible only for non-converged or externally
    evaluated campaigns) fall outside and are not counted.
    """
    if not results:
        raise ValueError("results must be non-empty")
    K = results[0].K
    if not 1 <= t_star <= K:
        raise ValueError(f"t_star must lie in [1, {K}], got {t_star}")
    y = np.stack([r.y_traces for r in results])  # (n, K, 3)

    percentiles = {
        int(level): nearest_rank_percentile(y, level, axis=0)
        for level in PERCENTILE_LEVELS
    }
    y_at_tstar = y[:, t_star - 1, :]
    edges = np.linspace(0.0, threshold, bins + 1)
    counts = np.stack(
        [np.histogram(y_at_tstar[:, p], bins=edges)[0] for p in range(len(PAIRS))]
    )
    return CampaignSummary(
        n_realizations=len(results),
        K=K,
        threshold=threshold,
        t_star_iter=int(t_star),
        t_star_minutes=t_star * SECONDS_PER_ITERATION / 60.0,
        t_star_source=t_star_source,
        mean_y_at_t_star=y_at_tstar.mean(axis=0),
        percentiles=percentiles,
        histogram_counts=counts,
        histogram_edges=edges,
        unconverged_seeds=tuple(
            r.seed for r in results if r.converged_iter is None
        ),
    )


def run_ablation(
    n: int,
    base_seed: int,
    params: SeekerParams,
    game: GameConfig,
    plant: PlantParams,
    K: int,
    worker_count: int = 1,
    threshold: float = 1.0,
    ideal_tracking: bool = False,
    bins: int = DEFAULT_HISTOGRAM_BINS,
    baseline_own_t_star: bool = False,
) -> dict[str, tuple[CampaignSummary, list[RealizationResult]]]:
    """Paired full-vs-baseline campaigns on identical seeds.

    Both variants see the same hidden initial conditions and the same probe
    draws. The baseline campaign is evaluated at the full campaign's t* by
    default (``baseline_own_t_star`` switches to its own, which requires the
    baseline itself to converge).
    """
    full_params = replace(params, variant="full")
    base_params = replace(params, variant="baseline")
    common = dict(
        n=n, base_seed=base_seed, game=game, plant=plant, K=K,
        worker_count=worker_count, threshold=threshold,
        ideal_tracking=ideal_tracking, bins=bins,
    )
    full_summary, full_results = run_campaign(params=full_params, **common)

    seeds = derive_realization_seeds(base_seed, n)

    def _one(s: int) -> RealizationResult:
        return run_realization(
            s, base_params, game, plant, K,
            threshold=threshold, ideal_tracking=ideal_tracking,
        )

    if worker_count <= 1:
        base_results = [_one(s) for s in seeds]
    else:
        base_results = Parallel(n_jobs=worker_count)(delayed(_one)(s) for s in seeds)

    if baseline_own_t_star:
        base_t_star = compute_t_star(base_results, threshold)
        base_summary = summarize(
            base_results, base_t_star, threshold=threshold, bins=bins,
        )
    else:
        base_summary = summarize(
            base_results,
            full_summary.t_star_iter,
            threshold=threshold,
            bins=bins,
            t_star_source="full",
        )
    return {
        "full": (full_summary, full_results),
        "baseline": (base_summary, base_results),
    }
