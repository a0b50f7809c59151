"""Command-line front end.

Exit codes: 0 success, 2 invalid configuration, 3 feasibility budget
exceeded, 4 validation failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .compare import compare, sample_from_distribution
from .distribution import (ExactDistribution, check_range, pgf_theorem2, pmf_theorem1,
                           poisson_mixture, sigma2_distribution)
from .errors import BudgetExceededError, ConfigError
from .lattice import DEFAULT_BUDGET, brute_force_volume_distribution, multinomial
from .records import atomic_write, render_exact, render_histogram, render_plot, render_report
from .sim import GeometryConfig, run_trials, trial_rng

log = logging.getLogger("rggpaths")

EXIT_OK, EXIT_CONFIG, EXIT_BUDGET, EXIT_VALIDATION = 0, 2, 3, 4


def parse_m(text: str) -> tuple[int, ...]:
    try:
        m = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"--m expects comma-separated integers, got {text!r}")
    if not m or any(x < 1 for x in m):
        raise argparse.ArgumentTypeError("--m entries must be positive integers")
    return m


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rggpaths",
        description="Exact law and Monte Carlo checks of k-hop path counts in 1d hard RGGs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, required=True, help="number of hops")
    common.add_argument("--m", type=parse_m, help="lens occupancies, e.g. 5,5,5")
    common.add_argument("--lambda", dest="lam", type=float, help="Poisson density (points per unit length)")
    common.add_argument("--r0", type=float, help="connection range")
    common.add_argument("--trials", type=int, default=50000)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", type=Path, help="output file (default: stdout)")
    common.add_argument("--epsilon", type=float, default=1e-6,
                        help="discarded Poisson mass bound for occupancy mixtures")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="largest enumeration allowed")
    common.add_argument("--workers", type=int, default=None, help="worker processes")
    common.add_argument("-v", "--verbose", action="store_true")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("exact", parents=[common], help="exact p.m.f. via the lattice path sum")
    sub.add_parser("pgf", parents=[common], help="normalised p.g.f. coefficients")
    sub.add_parser("oracle", parents=[common], help="p.m.f. by enumerating every lattice path")
    sub.add_parser("simulate", parents=[common], help="Monte Carlo histogram")
    val = sub.add_parser("validate", parents=[common], help="compare exact law against simulation")
    val.add_argument("--tv-max", type=float, default=0.05)
    val.add_argument("--alpha", type=float, default=0.001, help="minimum chi-square p-value")
    val.add_argument("--plot-out", type=Path, help="plot data file (default: next to --out)")
    val.add_argument("--self-test", action="store_true",
                     help="sample from the exact law itself instead of the graph")
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write(out, text)
        log.info("wrote %s", out)


def _need_m(args) -> tuple[int, ...]:
    if args.m is None:
        if args.k == 1:
            return ()
        raise ConfigError(f"{args.command} needs --m")
    if len(args.m) != args.k - 1:
        raise ConfigError(f"k={args.k} needs {args.k - 1} occupancies in --m, got {len(args.m)}")
    return args.m


def _exact_meta(kind: str, method: str, k: int, m) -> dict:
    return {"kind": kind, "method": method, "k": k, "m": list(m),
            "multinomial": str(multinomial(m)) if m else "1"}


def _geometry(args) -> GeometryConfig:
    if args.r0 is None:
        raise ConfigError(f"{args.command} needs --r0")
    if (args.m is None) == (args.lam is None):
        raise ConfigError("give exactly one of --m or --lambda")
    return GeometryConfig(k=args.k, r0=args.r0, lam=args.lam, m=args.m,
                          trials=args.trials, seed=args.seed)


def cmd_exact(args) -> int:
    m = _need_m(args)
    if args.r0 is not None:
        check_range(args.k, args.r0)
    dist = pmf_theorem1(args.k, m, r0=args.r0, budget=args.budget, workers=args.workers)
    _emit(render_exact(dist, _exact_meta("exact", "lattice-path-sum", args.k, m), args.format), args.out)
    return EXIT_OK


def cmd_pgf(args) -> int:
    m = _need_m(args)
    if args.r0 is not None:
        check_range(args.k, args.r0)
    poly = pgf_theorem2(args.k, m, r0=args.r0, budget=args.budget, workers=args.workers)
    _emit(render_exact(poly, _exact_meta("pgf", "coefficient-extraction", args.k, m), args.format), args.out)
    return EXIT_OK


def cmd_oracle(args) -> int:
    m = _need_m(args)
    if args.k < 3:
        raise ConfigError("oracle enumerates lattice paths and needs k >= 3")
    hist = brute_force_volume_distribution(m, budget=args.budget, workers=args.workers)
    dist = ExactDistribution.from_counts(hist, multinomial(m))
    _emit(render_exact(dist, _exact_meta("oracle", "enumeration", args.k, m), args.format), args.out)
    return EXIT_OK


def _sim_meta(cfg: GeometryConfig) -> dict:
    return {"kind": "simulate", "k": cfg.k, "r0": cfg.r0,
            "m": list(cfg.m) if cfg.m else None, "lambda": cfg.lam, "seed": cfg.seed}


def cmd_simulate(args) -> int:
    cfg = _geometry(args)
    hist = run_trials(cfg, workers=args.workers)
    _emit(render_histogram(hist, _sim_meta(cfg), args.format), args.out)
    return EXIT_OK


def reference_distribution(cfg: GeometryConfig, epsilon: float, budget: int, workers=None) -> dict:
    """Exact (conditioned) or Poisson-mixture law matching a simulation config."""
    if cfg.m is not None:
        return pmf_theorem1(cfg.k, cfg.m, r0=cfg.r0, budget=budget, workers=workers).probs
    if cfg.k == 2:
        return sigma2_distribution(cfg.lam, cfg.r0)
    return poisson_mixture(cfg.k, cfg.lam, cfg.r0, epsilon, budget=budget)


def cmd_validate(args) -> int:
    cfg = _geometry(args)
    exact = reference_distribution(cfg, args.epsilon, args.budget, args.workers)
    if args.self_test:
        hist = sample_from_distribution(exact, cfg.trials, trial_rng(cfg.seed, 0))
    else:
        hist = run_trials(cfg, workers=args.workers)
    report = compare(exact, hist)
    passed = report.passes(args.tv_max, args.alpha)
    meta = {**_sim_meta(cfg), "kind": "validate", "self_test": args.self_test,
            "tv_max": args.tv_max, "alpha": args.alpha, "passed": passed}
    _emit(render_report(report, meta, args.format), args.out)
    plot_out = args.plot_out
    if plot_out is None and args.out is not None:
        plot_out = args.out.with_name(args.out.stem + ".plot." + args.format)
    if plot_out is not None:
        atomic_write(plot_out, render_plot(report, args.format))
    log.info("TV=%.4f chi2=%.2f df=%d p=%.4g", report.total_variation, report.chi_square,
             report.degrees_of_freedom, report.p_value)
    return EXIT_OK if passed else EXIT_VALIDATION


COMMANDS = {"exact": cmd_exact, "pgf": cmd_pgf, "oracle": cmd_oracle,
            "simulate": cmd_simulate, "validate": cmd_validate}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
