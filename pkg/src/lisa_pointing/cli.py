"""Command-line front end.

Subcommands:

* ``run``      - full Monte-Carlo campaign; writes ``traces.csv`` and
  ``summary.json``.
* ``single``   - one realization with a per-iteration log.
* ``ablate``   - paired full-vs-baseline campaigns on identical seeds;
  writes per-variant outputs plus ``table1.csv``.
* ``validate`` - parse and validate the configuration, run nothing.

Exit codes: 0 success, 1 configuration error, 2 runtime error,
3 non-convergence within the iteration budget.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, parse_config
from .harness import (
    NonConvergenceError,
    derive_realization_seeds,
    run_ablation,
    run_campaign,
    run_realization,
    summarize,
)
from .reporting import emit_results, write_table1_csv

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_NONCONVERGED = 3


def _add_common_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--config", metavar="PATH", help="JSON config file")
    sub.add_argument("--realizations", type=int, metavar="N", dest="n_realizations")
    sub.add_argument("--iterations", type=int, metavar="K", dest="iterations")
    sub.add_argument("--seed", type=int, metavar="U64", dest="base_seed")
    sub.add_argument("--variant", choices=("full", "baseline"))
    sub.add_argument("--workers", type=int, metavar="N", dest="worker_count")
    sub.add_argument("--output", metavar="DIR", dest="output_dir")
    sub.add_argument(
        "--threshold", type=float, metavar="MURAD", dest="threshold_murad"
    )
    sub.add_argument(
        "--ideal-tracking",
        action="store_const",
        const=True,
        default=None,
        dest="ideal_tracking",
        help="bypass the plant and measure at the commanded references",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lisa-pointing",
        description="Nash-equilibrium-seeking pointing acquisition simulator",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    run_p = subs.add_parser("run", help="run a Monte-Carlo campaign")
    single_p = subs.add_parser("single", help="run one realization, verbosely")
    single_p.add_argument(
        "--log-every", type=int, default=1, metavar="N",
        help="print every N-th iteration (default: every iteration)",
    )
    ablate_p = subs.add_parser(
        "ablate", help="paired full-vs-baseline campaigns on identical seeds"
    )
    ablate_p.add_argument(
        "--baseline-own-tstar",
        action="store_true",
        help="evaluate the baseline at its own t* instead of the full variant's",
    )
    validate_p = subs.add_parser("validate", help="check the configuration only")
    for sub in (run_p, single_p, ablate_p, validate_p):
        _add_common_options(sub)
    return parser


_OVERRIDE_KEYS = (
    "n_realizations",
    "iterations",
    "base_seed",
    "variant",
    "worker_count",
    "output_dir",
    "threshold_murad",
    "ideal_tracking",
)


def _load_config(args: argparse.Namespace) -> RunConfig:
    overrides = {k: getattr(args, k) for k in _OVERRIDE_KEYS}
    return parse_config(args.config, overrides)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    summary, results = run_campaign(
        n=cfg.n_realizations,
        base_seed=cfg.base_seed,
        params=cfg.seeker_params(),
        game=cfg.game_config(),
        plant=cfg.plant_params(),
        K=cfg.iterations,
        worker_count=cfg.worker_count,
        threshold=cfg.threshold_murad,
        ideal_tracking=cfg.ideal_tracking,
        use_b0_rule=cfg.use_b0_rule,
        bins=cfg.histogram_bins,
    )
    paths = emit_results(results, summary, Path(cfg.output_dir), cfg.to_dict())
    print(
        f"{cfg.n_realizations} realizations, K={cfg.iterations}: "
        f"t* = {summary.t_star_iter} iterations "
        f"({summary.t_star_minutes:.2f} min at 17 s each)"
    )
    means = ", ".join(f"{m:.4f}" for m in summary.mean_y_at_t_star)
    print(f"mean misalignment at t* (y12, y13, y23): {means} murad")
    for name, p in sorted(paths.items()):
        print(f"wrote {name}: {p}")
    if summary.unconverged_seeds:
        print(
            f"WARNING: {len(summary.unconverged_seeds)} realization(s) never "
            f"converged within K={cfg.iterations}",
            file=sys.stderr,
        )
        return EXIT_NONCONVERGED
    return EXIT_OK


def _cmd_single(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    seed = derive_realization_seeds(cfg.base_seed, 1)[0]
    result = run_realization(
        seed,
        cfg.seeker_params(),
        cfg.game_config(),
        cfg.plant_params(),
        cfg.iterations,
        threshold=cfg.threshold_murad,
        ideal_tracking=cfg.ideal_tracking,
        use_b0_rule=cfg.use_b0_rule,
    )
    every = max(1, args.log_every)
    print(f"seed {seed}  (derived from base_seed={cfg.base_seed}, realization 0)")
    print("iter  y12        y13        y23        h1         h2         h3")
    for k in range(0, result.K, every):
        y, h = result.y_traces[k], result.h_traces[k]
        print(
            f"{k + 1:5d} {y[0]:<10.4g} {y[1]:<10.4g} {y[2]:<10.4g} "
            f"{h[0]:<10.4g} {h[1]:<10.4g} {h[2]:<10.4g}"
        )
    if result.converged_iter is None:
        print(
            f"no convergence below {cfg.threshold_murad} murad within "
            f"K={cfg.iterations}",
            file=sys.stderr,
        )
        return EXIT_NONCONVERGED
    print(f"all pairs below {cfg.threshold_murad} murad from iteration {result.converged_iter}")
    summary = summarize(
        [result], result.converged_iter, threshold=cfg.threshold_murad,
        bins=cfg.histogram_bins,
    )
    paths = emit_results([result], summary, Path(cfg.output_dir), cfg.to_dict())
    for name, p in sorted(paths.items()):
        print(f"wrote {name}: {p}")
    return EXIT_OK


def _cmd_ablate(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    legs = run_ablation(
        n=cfg.n_realizations,
        base_seed=cfg.base_seed,
        params=cfg.seeker_params(),
        game=cfg.game_config(),
        plant=cfg.plant_params(),
        K=cfg.iterations,
        worker_count=cfg.worker_count,
        threshold=cfg.threshold_murad,
        ideal_tracking=cfg.ideal_tracking,
        bins=cfg.histogram_bins,
        baseline_own_t_star=args.baseline_own_tstar,
    )
    out = Path(cfg.output_dir)
    for variant, (summary, results) in legs.items():
        emit_results(results, summary, out / variant, cfg.to_dict())
    full_summary = legs["full"][0]
    base_summary = legs["baseline"][0]
    table = write_table1_csv(out / "table1.csv", full_summary, base_summary)
    print(
        f"full t* = {full_summary.t_star_iter} iterations; baseline evaluated at "
        f"iteration {base_summary.t_star_iter} ({base_summary.t_star_source})"
    )
    for p, name in enumerate(("y12", "y13", "y23")):
        fm = full_summary.mean_y_at_t_star[p]
        bm = base_summary.mean_y_at_t_star[p]
        print(f"{name}: full {fm:.4f} murad, baseline {bm:.4f} murad (x{bm / fm:.1f})")
    print(f"wrote table: {table}")
    if full_summary.unconverged_seeds:
        print(
            f"WARNING: {len(full_summary.unconverged_seeds)} full-variant "
            f"realization(s) never converged within K={cfg.iterations}",
            file=sys.stderr,
        )
        return EXIT_NONCONVERGED
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    print("configuration OK")
    for key, value in sorted(cfg.to_dict().items()):
        print(f"  {key} = {value}")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "single": _cmd_single,
    "ablate": _cmd_ablate,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NonConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
