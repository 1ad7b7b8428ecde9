"""Command-line front end.

Subcommands: threshold, decide, cost, simulate, fixed-points, markov,
multigen, sweep, validate.  Exit codes: 0 success, 1 internal error,
2 config error, 3 resource error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import deterministic, harness, markov, tolerance
from .config import ConfigError, load_config
from .deterministic import EnvParams
from .markov import ResourceLimitError

EXIT_OK = 0
EXIT_INTERNAL = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3


def _add_params_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-N", "--sample-size", type=int, required=True,
                        help="data points per learner (N >= 2)")
    parser.add_argument("--p-plus", type=float, required=True,
                        help="exception probability of productive-rule speakers")
    parser.add_argument("--p-minus", type=float, required=True,
                        help="exception probability of non-productive speakers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tpdyn",
        description="Language-change dynamics for threshold-based rule learners",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("threshold", help="productivity threshold N / ln N")
    p.add_argument("n_items", type=int)

    p = sub.add_parser("decide", help="productivity decision for N items, E exceptions")
    p.add_argument("n_items", type=int)
    p.add_argument("n_exceptions", type=int)

    p = sub.add_parser("cost", help="expected lookup costs for N items, E exceptions")
    p.add_argument("n_items", type=int)
    p.add_argument("n_exceptions", type=int)

    for name, text in (
        ("simulate", "run a scenario config (any model)"),
        ("multigen", "run a multi-generation scenario config"),
        ("markov", "transition-matrix analysis for a stochastic scenario config"),
        ("sweep", "parameter-sweep grid from a scenario config"),
        ("validate", "Monte Carlo cross-check of the analytic map"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("config", help="path to a scenario TOML file")

    p = sub.add_parser("fixed-points", help="fixed points and stability of the map")
    _add_params_flags(p)
    p.add_argument("--grid", type=int, default=1001, help="scan grid size")
    p.add_argument("--tol", type=float, default=1e-12, help="root residual tolerance")

    return parser


def _cmd_threshold(args) -> int:
    theta = tolerance.tolerance_threshold(args.n_items)
    print(f"N = {args.n_items}")
    print(f"threshold = {theta:.17g}")
    print(f"floor = {int(theta)}")
    return EXIT_OK


def _cmd_decide(args) -> int:
    stats = tolerance.RuleStats(args.n_items, args.n_exceptions)
    closed = tolerance.is_productive(stats)
    base = tolerance.productive_base_form(stats)
    print(f"N = {stats.n_items}, e = {stats.n_exceptions}")
    print(f"threshold = {tolerance.tolerance_threshold(stats.n_items):.17g}")
    print(f"productive (closed form) = {str(closed).lower()}")
    print(f"productive (cost comparison) = {str(base).lower()}")
    return EXIT_OK


def _cmd_cost(args) -> int:
    stats = tolerance.RuleStats(args.n_items, args.n_exceptions)
    pair = tolerance.costs(stats)
    print(f"exception-list cost = {pair.cost_ecm:.17g}")
    print(f"ranked-listing cost = {pair.cost_ranked:.17g}")
    return EXIT_OK


def _cmd_fixed_points(args) -> int:
    params = EnvParams(args.sample_size, args.p_plus, args.p_minus)
    for report in deterministic.fixed_points(params, args.grid, args.tol):
        print(
            f"alpha = {report.location:.17g}  "
            f"derivative = {report.derivative_value:.17g}  {report.stability}"
        )
    return EXIT_OK


def _print_summary(summary: dict) -> None:
    print(json.dumps(summary, indent=2, sort_keys=True))


def _cmd_simulate(args) -> int:
    cfg = load_config(args.config)
    result = harness.run(cfg)
    _print_summary(result.summary)
    return EXIT_OK


def _cmd_multigen(args) -> int:
    cfg = load_config(args.config)
    if cfg.model != "multigen":
        raise ConfigError(f"[scenario] expected model 'multigen', got '{cfg.model}'")
    result = harness.run(cfg)
    _print_summary(result.summary)
    return EXIT_OK


def _cmd_markov(args) -> int:
    cfg = load_config(args.config)
    if cfg.model != "stochastic":
        raise ConfigError(f"[scenario] expected model 'stochastic', got '{cfg.model}'")
    spec = markov.ChainSpec(cfg.pop_size, cfg.params)
    matrix = markov.transition_matrix(spec)
    stat = markov.stationary_distribution(matrix)
    mode = int(stat.distribution.argmax())
    summary = {
        "model": "stochastic",
        "pop_size": cfg.pop_size,
        "absorbing_states": list(stat.absorbing),
        "stationary_mode_count": mode,
        "stationary_mode_fraction": mode / cfg.pop_size,
        "residual": stat.residual,
        "iterations": stat.iterations,
    }
    if cfg.csv_path:
        rows = [[i, float(p)] for i, p in enumerate(stat.distribution)]
        harness.write_csv(cfg.csv_path, ["state", "probability"], rows)
    _print_summary(summary)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    cfg = load_config(args.config)
    if cfg.sweep is None:
        raise ConfigError("config has no [sweep] section")
    result = harness.sweep(cfg)
    _print_summary(result.summary)
    return EXIT_OK


def _cmd_validate(args) -> int:
    cfg = load_config(args.config)
    if cfg.validate is None:
        raise ConfigError("config has no [validate] section")
    report = harness.validate(cfg)
    for check in report["checks"]:
        print(
            f"alpha = {check['alpha']:.6g}  analytic = {check['analytic']:.17g}  "
            f"empirical = {check['empirical']:.17g}  "
            f"std_error = {check['std_error']:.6g}  "
            f"{'PASS' if check['pass'] else 'FAIL'}"
        )
    return EXIT_OK if report["all_pass"] else EXIT_INTERNAL


_COMMANDS = {
    "threshold": _cmd_threshold,
    "decide": _cmd_decide,
    "cost": _cmd_cost,
    "fixed-points": _cmd_fixed_points,
    "simulate": _cmd_simulate,
    "multigen": _cmd_multigen,
    "markov": _cmd_markov,
    "sweep": _cmd_sweep,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResourceLimitError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
