"""Scenario execution: trajectories, sweeps, and oracle validation runs.

Produces the batch artifacts (CSV, optional SVG and JSON) for a parsed
scenario config and returns the stdout summary as plain data.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from . import deterministic, markov, multigen, oracle, svgplot
from .config import ScenarioConfig, SweepSpec
from .deterministic import EnvParams

AGREEMENT_SIGMAS = 4.0


def _fmt(value: float | int | str) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return format(value, ".17g")


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) for v in row) for row in rows]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass(frozen=True)
class RunResult:
    header: list[str]
    rows: list[list]
    summary: dict


def _run_deterministic(cfg: ScenarioConfig) -> RunResult:
    traj = deterministic.trajectory(cfg.alpha0, cfg.params, cfg.generations)
    rows = [
        [t, a, v]
        for t, (a, v) in enumerate(zip(traj.alphas, traj.variant_freqs))
    ]
    reports = deterministic.fixed_points(cfg.params)
    summary = {
        "model": "deterministic",
        "final_alpha": traj.alphas[-1],
        "fixed_points": [
            {"location": r.location, "derivative": r.derivative_value,
             "stability": r.stability}
            for r in reports
        ],
    }
    return RunResult(["generation", "alpha", "variant_frequency"], rows, summary)


def _run_stochastic(cfg: ScenarioConfig) -> RunResult:
    spec = markov.ChainSpec(cfg.pop_size, cfg.params)
    counts = markov.sample_trajectory(spec, cfg.count0, cfg.generations, cfg.seed)
    rows = [[t, c, c / cfg.pop_size] for t, c in enumerate(counts)]
    summary = {
        "model": "stochastic",
        "pop_size": cfg.pop_size,
        "seed": cfg.seed,
        "final_count": counts[-1],
        "final_fraction": counts[-1] / cfg.pop_size,
    }
    return RunResult(["generation", "count", "fraction"], rows, summary)


def _run_multigen(cfg: ScenarioConfig) -> RunResult:
    emitted = multigen.trajectory_multigen(
        cfg.history, cfg.weights, cfg.params, cfg.generations
    )
    alphas = [cfg.history[-1]] + emitted
    rows = [
        [t, a, deterministic.variant_frequency(a, cfg.params)]
        for t, a in enumerate(alphas)
    ]
    summary = {
        "model": "multigen",
        "weights": list(cfg.weights.weights),
        "final_alpha": alphas[-1],
    }
    return RunResult(["generation", "alpha", "variant_frequency"], rows, summary)


def run(cfg: ScenarioConfig) -> RunResult:
    """Execute a single-scenario simulation and write its artifacts."""
    if cfg.model == "deterministic":
        result = _run_deterministic(cfg)
    elif cfg.model == "stochastic":
        result = _run_stochastic(cfg)
    else:
        result = _run_multigen(cfg)

    if cfg.csv_path:
        write_csv(cfg.csv_path, result.header, result.rows)
    if cfg.svg_path:
        xs = [row[0] for row in result.rows]
        ys = [row[1] if cfg.model != "stochastic" else row[2] for row in result.rows]
        svg = svgplot.line_chart(
            xs, ys, title=f"{cfg.model} trajectory",
            x_label="generation",
            y_label="alpha" if cfg.model != "stochastic" else "fraction",
        )
        with open(cfg.svg_path, "w", encoding="utf-8") as fh:
            fh.write(svg + "\n")
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            json.dump(result.summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return result


def _cell_params(cfg: ScenarioConfig, assignment: dict) -> tuple[EnvParams, dict]:
    fields = {
        "sample_size": cfg.params.sample_size,
        "p_plus_e": cfg.params.p_plus_e,
        "p_minus_e": cfg.params.p_minus_e,
    }
    extras = {"alpha0": cfg.alpha0, "pop_size": cfg.pop_size}
    for name, value in assignment.items():
        if name in fields:
            fields[name] = value
        else:
            extras[name] = value
    return EnvParams(**fields), extras


def _sweep_cell(cfg: ScenarioConfig, spec: SweepSpec, index: int, assignment: dict) -> list:
    params, extras = _cell_params(cfg, assignment)
    row = [assignment[a.name] for a in spec.axes]
    needs_fp = "fixed_point" in spec.outputs or "stability" in spec.outputs
    first_stable = None
    if needs_fp:
        reports = deterministic.fixed_points(params)
        stable = [r for r in reports if r.stability == "stable"]
        first_stable = stable[0] if stable else (reports[0] if reports else None)
    for out in spec.outputs:
        if out == "fixed_point":
            row.append(first_stable.location if first_stable else float("nan"))
        elif out == "stability":
            row.append(first_stable.stability if first_stable else "none")
        elif out == "endpoint":
            if cfg.model == "stochastic":
                chain = markov.ChainSpec(extras["pop_size"], params)
                count0 = min(cfg.count0, extras["pop_size"])
                counts = markov.sample_trajectory(
                    chain, count0, cfg.generations, cfg.seed + index
                )
                row.append(counts[-1] / extras["pop_size"])
            else:
                traj = deterministic.trajectory(extras["alpha0"], params, cfg.generations)
                row.append(traj.alphas[-1])
    return row


def sweep(cfg: ScenarioConfig) -> RunResult:
    """Grid evaluation over one or two parameter axes, row-major order."""
    spec = cfg.sweep
    header = [a.name for a in spec.axes] + list(spec.outputs)
    grids = [axis.values() for axis in spec.axes]
    assignments = [
        dict(zip((a.name for a in spec.axes), combo)) for combo in product(*grids)
    ]
    with ThreadPoolExecutor(max_workers=spec.workers) as pool:
        rows = list(
            pool.map(
                lambda ia: _sweep_cell(cfg, spec, ia[0], ia[1]),
                enumerate(assignments),
            )
        )
    if cfg.csv_path:
        write_csv(cfg.csv_path, header, rows)
    summary = {"model": cfg.model, "cells": len(rows), "outputs": list(spec.outputs)}
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            json.dump(summary, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return RunResult(header, rows, summary)


def validate(cfg: ScenarioConfig) -> dict:
    """Analytic map vs Monte Carlo learner simulation at the configured points.

    A point passes when |analytic - empirical| <= 4 binomial standard
    errors, with the standard error taken at the analytic probability so
    that near-degenerate probabilities are handled gracefully.
    """
    spec = cfg.validate
    checks = []
    for i, alpha in enumerate(spec.alphas):
        analytic = deterministic.step(alpha, cfg.params)
        est = oracle.empirical_convergence_prob(
            alpha, cfg.params, spec.trials, cfg.seed + i
        )
        se = (analytic * (1 - analytic) / spec.trials) ** 0.5
        passed = abs(analytic - est.point) <= AGREEMENT_SIGMAS * se
        checks.append({
            "alpha": alpha,
            "analytic": analytic,
            "empirical": est.point,
            "std_error": se,
            "trials": spec.trials,
            "pass": bool(passed),
        })
    report = {"model": cfg.model, "checks": checks,
              "all_pass": all(c["pass"] for c in checks)}
    if cfg.json_path:
        with open(cfg.json_path, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
    return report
