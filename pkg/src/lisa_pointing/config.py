"""Run configuration: file plus flag parsing with validation.

A run is fully described by a flat JSON object whose keys match the
``RunConfig`` fields. Flags override file values, file values override the
shipped defaults. Every invariant violation is reported with the offending
key so misconfigured campaigns abort before any compute.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Mapping

from .game import GameConfig
from .plant import PlantParams
from .seeker import VARIANTS, SeekerParams

__all__ = ["ConfigError", "RunConfig", "parse_config"]


class ConfigError(ValueError):
    """Configuration file or flag rejected; message names the offending key."""


@dataclass(frozen=True)
class RunConfig:
    """Complete description of a campaign run.

    ``w`` and ``b0`` accept ``null``: ``w`` then resolves to
    ``1/uc_radius**2`` and ``b0`` to the per-spacecraft rule
    ``0.3 * (1 - h_i(0))`` derived from each realization's initial payoff.
    """

    # seeker schedules and update
    gamma_r: float = 0.58
    a_r: float = 0.5
    gamma_eta: float = 0.315
    a_eta: float = 0.5
    rho: float = 0.93
    beta: float = 0.99
    b: float = 4.5
    b0: float | None = None
    epsilon: float = 1e-6
    variant: str = "full"
    # game
    w: float | None = None
    uc_radius: float = 9.0
    # plant
    tau_c: float = 1.0 / 17.0
    tau_g: float = 1.0
    ideal_tracking: bool = False
    # campaign
    n_realizations: int = 1000
    iterations: int = 5000
    base_seed: int = 7
    threshold_murad: float = 1.0
    worker_count: int = 1
    histogram_bins: int = 30
    output_dir: str = "results"

    def seeker_params(self) -> SeekerParams:
        return SeekerParams(
            gamma_r=self.gamma_r,
            a_r=self.a_r,
            gamma_eta=self.gamma_eta,
            a_eta=self.a_eta,
            rho=self.rho,
            beta=self.beta,
            b_final=self.b,
            b0=self.b0 if self.b0 is not None else 0.3,
            epsilon=self.epsilon,
            variant=self.variant,
        )

    def game_config(self) -> GameConfig:
        return GameConfig(uc_radius=self.uc_radius, b=self.b, w=self.w)

    def plant_params(self) -> PlantParams:
        return PlantParams(tau_c=self.tau_c, tau_g=self.tau_g)

    @property
    def use_b0_rule(self) -> bool:
        return self.b0 is None

    def validate(self) -> None:
        try:
            self.seeker_params().validate()
            self.game_config().validate()
            self.plant_params().validate()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.variant not in VARIANTS:
            raise ConfigError(f"variant must be one of {VARIANTS}")
        if self.n_realizations < 1:
            raise ConfigError("n_realizations must be at least 1")
        if self.iterations < 1:
            raise ConfigError("iterations must be at least 1")
        if self.base_seed < 0:
            raise ConfigError("base_seed must be nonnegative")
        if not self.threshold_murad > 0:
            raise ConfigError("threshold_murad must be positive")
        if self.worker_count < 1:
            raise ConfigError("worker_count must be at least 1")
        if self.histogram_bins < 1:
            raise ConfigError("histogram_bins must be at least 1")
        if not self.output_dir:
            raise ConfigError("output_dir must be a non-empty path")

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


_FIELDS = {f.name: f for f in fields(RunConfig)}
_BOOL_KEYS = {"ideal_tracking"}
_INT_KEYS = {"n_realizations", "iterations", "base_seed", "worker_count", "histogram_bins"}
_STR_KEYS = {"variant", "output_dir"}
_OPTIONAL_KEYS = {"w", "b0"}


def _coerce(key: str, value: Any) -> Any:
    if value is None:
        if key in _OPTIONAL_KEYS:
            return None
        raise ConfigError(f"{key} must not be null")
    if key in _BOOL_KEYS:
        if isinstance(value, bool):
            return value
        if isinstance(value, str) and value.lower() in ("true", "false"):
            return value.lower() == "true"
        raise ConfigError(f"{key} must be a boolean")
    if key in _STR_KEYS:
        if not isinstance(value, str):
            raise ConfigError(f"{key} must be a string")
        return value
    if key in _INT_KEYS:
        if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
            raise ConfigError(f"{key} must be an integer")
        try:
            return int(value)
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"{key} must be an integer") from exc
    if isinstance(value, bool):
        raise ConfigError(f"{key} must be a number")
    try:
        return float(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{key} must be a number") from exc


def parse_config(
    path: str | Path | None = None,
    overrides: Mapping[str, Any] | None = None,
) -> RunConfig:
    """Build a validated ``RunConfig`` from an optional file and overrides.

    Precedence: overrides (flags) beat file values beat defaults. Unknown
    keys in either source are rejected by name.
    """
    merged: dict[str, Any] = {}
    if path is not None:
        p = Path(path)
        if not p.is_file():
            raise ConfigError(f"config file not found: {p}")
        try:
            data = json.loads(p.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {p}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"config file must hold a JSON object: {p}")
        merged.update(data)
    if overrides:
        merged.update({k: v for k, v in overrides.items() if v is not None})

    kwargs: dict[str, Any] = {}
    for key, value in merged.items():
        if key not in _FIELDS:
            raise ConfigError(f"unknown config key: {key}")
        kwargs[key] = _coerce(key, value)

    cfg = RunConfig(**kwargs)
    cfg.validate()
    return cfg
