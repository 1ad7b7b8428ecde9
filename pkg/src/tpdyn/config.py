"""Scenario configuration files.

A scenario is a flat TOML document with typed sections; unknown sections
or keys are rejected so that typos fail loudly.  Configs are versionable
experiment artifacts: parsing and re-serializing one yields a
semantically identical document.
"""

from __future__ import annotations

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from dataclasses import dataclass
from typing import Any

from .deterministic import EnvParams
from .multigen import CohortWeights

MODELS = ("deterministic", "stochastic", "multigen")
SWEEP_AXES = ("p_plus_e", "p_minus_e", "sample_size", "alpha0", "pop_size")
SWEEP_OUTPUTS = ("fixed_point", "stability", "endpoint")
MAX_COHORTS = 8

_SECTION_KEYS = {
    "scenario": {"model"},
    "params": {"sample_size", "p_plus_e", "p_minus_e"},
    "initial": {"alpha0", "count0", "pop_size", "history", "weights"},
    "run": {"generations", "seed"},
    "output": {"csv", "svg", "json"},
    "sweep": {
        "axis1_name", "axis1_min", "axis1_max", "axis1_steps",
        "axis2_name", "axis2_min", "axis2_max", "axis2_steps",
        "outputs", "workers",
    },
    "validate": {"trials", "alphas"},
}


class ConfigError(Exception):
    """Invalid scenario configuration; message names the offending field."""


@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    steps: int

    def values(self) -> list[float | int]:
        if self.steps == 1:
            vals = [self.lo]
        else:
            span = self.hi - self.lo
            vals = [self.lo + span * i / (self.steps - 1) for i in range(self.steps)]
        if self.name in ("sample_size", "pop_size"):
            return [int(round(v)) for v in vals]
        return vals


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[SweepAxis, ...]
    outputs: tuple[str, ...]
    workers: int = 1


@dataclass(frozen=True)
class ValidateSpec:
    trials: int
    alphas: tuple[float, ...]


@dataclass(frozen=True)
class ScenarioConfig:
    model: str
    params: EnvParams
    generations: int
    seed: int | None = None
    alpha0: float | None = None
    count0: int | None = None
    pop_size: int | None = None
    history: tuple[float, ...] | None = None
    weights: CohortWeights | None = None
    csv_path: str | None = None
    svg_path: str | None = None
    json_path: str | None = None
    sweep: SweepSpec | None = None
    validate: ValidateSpec | None = None


def _require(section: dict, section_name: str, key: str, types: type | tuple) -> Any:
    if key not in section:
        raise ConfigError(f"[{section_name}] missing required key '{key}'")
    value = section[key]
    if isinstance(value, bool) or not isinstance(value, types):
        raise ConfigError(f"[{section_name}] key '{key}' has wrong type: {value!r}")
    return value


def _optional(section: dict, section_name: str, key: str, types: type | tuple) -> Any:
    if key not in section:
        return None
    return _require(section, section_name, key, types)


def _float_list(section: dict, section_name: str, key: str) -> tuple[float, ...] | None:
    raw = _optional(section, section_name, key, list)
    if raw is None:
        return None
    if not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in raw):
        raise ConfigError(f"[{section_name}] key '{key}' must be a list of numbers")
    return tuple(float(v) for v in raw)


def _check_unknown(doc: dict) -> None:
    for section_name, body in doc.items():
        if section_name not in _SECTION_KEYS:
            raise ConfigError(f"unknown section [{section_name}]")
        if not isinstance(body, dict):
            raise ConfigError(f"[{section_name}] must be a table")
        for key in body:
            if key not in _SECTION_KEYS[section_name]:
                raise ConfigError(f"[{section_name}] unknown key '{key}'")


def _parse_sweep(section: dict) -> SweepSpec:
    axes = []
    for prefix in ("axis1", "axis2"):
        name = _optional(section, "sweep", f"{prefix}_name", str)
        if name is None:
            if prefix == "axis1":
                raise ConfigError("[sweep] requires at least axis1_name")
            continue
        if name not in SWEEP_AXES:
            raise ConfigError(f"[sweep] unsupported axis '{name}' (one of {SWEEP_AXES})")
        lo = float(_require(section, "sweep", f"{prefix}_min", (int, float)))
        hi = float(_require(section, "sweep", f"{prefix}_max", (int, float)))
        steps = _require(section, "sweep", f"{prefix}_steps", int)
        if steps < 1:
            raise ConfigError(f"[sweep] {prefix}_steps must be >= 1, got {steps}")
        if steps >= 2 and not hi > lo:
            raise ConfigError(f"[sweep] {prefix}_max must exceed {prefix}_min")
        axes.append(SweepAxis(name, lo, hi, steps))
    outputs = section.get("outputs", list(SWEEP_OUTPUTS))
    if not isinstance(outputs, list) or not outputs:
        raise ConfigError("[sweep] 'outputs' must be a non-empty list")
    for out in outputs:
        if out not in SWEEP_OUTPUTS:
            raise ConfigError(f"[sweep] unsupported output '{out}' (one of {SWEEP_OUTPUTS})")
    workers = section.get("workers", 1)
    if not isinstance(workers, int) or isinstance(workers, bool) or workers < 1:
        raise ConfigError(f"[sweep] 'workers' must be a positive integer, got {workers!r}")
    return SweepSpec(tuple(axes), tuple(outputs), workers)


def parse_config(text: str) -> ScenarioConfig:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"TOML syntax error: {exc}") from exc
    _check_unknown(doc)

    scenario = doc.get("scenario", {})
    model = _require(scenario, "scenario", "model", str)
    if model not in MODELS:
        raise ConfigError(f"[scenario] model must be one of {MODELS}, got '{model}'")

    p = doc.get("params", {})
    try:
        params = EnvParams(
            sample_size=_require(p, "params", "sample_size", int),
            p_plus_e=float(_require(p, "params", "p_plus_e", (int, float))),
            p_minus_e=float(_require(p, "params", "p_minus_e", (int, float))),
        )
    except ValueError as exc:
        raise ConfigError(f"[params] {exc}") from exc

    run = doc.get("run", {})
    generations = _require(run, "run", "generations", int)
    if generations < 0:
        raise ConfigError(f"[run] generations must be >= 0, got {generations}")
    seed = _optional(run, "run", "seed", int)

    init = doc.get("initial", {})
    alpha0 = _optional(init, "initial", "alpha0", (int, float))
    alpha0 = float(alpha0) if alpha0 is not None else None
    count0 = _optional(init, "initial", "count0", int)
    pop_size = _optional(init, "initial", "pop_size", int)
    history = _float_list(init, "initial", "history")
    weights_raw = _float_list(init, "initial", "weights")

    weights = None
    if weights_raw is not None:
        if len(weights_raw) > MAX_COHORTS:
            raise ConfigError(
                f"[initial] at most {MAX_COHORTS} generation weights are supported"
            )
        try:
            weights = CohortWeights(weights_raw)
        except ValueError as exc:
            raise ConfigError(f"[initial] {exc}") from exc

    if model == "deterministic":
        if alpha0 is None:
            raise ConfigError("[initial] deterministic model requires 'alpha0'")
        if not 0.0 <= alpha0 <= 1.0:
            raise ConfigError(f"[initial] alpha0 must lie in [0, 1], got {alpha0}")
    elif model == "stochastic":
        if count0 is None or pop_size is None:
            raise ConfigError("[initial] stochastic model requires 'count0' and 'pop_size'")
        if pop_size < 1:
            raise ConfigError(f"[initial] pop_size must be >= 1, got {pop_size}")
        if not 0 <= count0 <= pop_size:
            raise ConfigError(f"[initial] count0 must lie in [0, {pop_size}], got {count0}")
        if seed is None:
            raise ConfigError("[run] stochastic model requires an explicit 'seed'")
    else:  # multigen
        if history is None or weights is None:
            raise ConfigError("[initial] multigen model requires 'history' and 'weights'")
        if len(history) != len(weights.weights):
            raise ConfigError(
                f"[initial] history length {len(history)} != weights length "
                f"{len(weights.weights)}"
            )
        if any(not 0.0 <= a <= 1.0 for a in history):
            raise ConfigError("[initial] history entries must lie in [0, 1]")

    out = doc.get("output", {})
    csv_path = _optional(out, "output", "csv", str)
    svg_path = _optional(out, "output", "svg", str)
    json_path = _optional(out, "output", "json", str)

    sweep = _parse_sweep(doc["sweep"]) if "sweep" in doc else None
    if sweep is not None:
        for axis in sweep.axes:
            if axis.name == "pop_size" and model != "stochastic":
                raise ConfigError("[sweep] axis 'pop_size' requires the stochastic model")
        if model == "multigen":
            raise ConfigError("[sweep] sweeping the multigen model is not supported")

    validate = None
    if "validate" in doc:
        v = doc["validate"]
        trials = _require(v, "validate", "trials", int)
        if trials < 1:
            raise ConfigError(f"[validate] trials must be >= 1, got {trials}")
        alphas = _float_list(v, "validate", "alphas")
        if alphas is None:
            if alpha0 is None:
                raise ConfigError("[validate] requires 'alphas' or an [initial] alpha0")
            alphas = (alpha0,)
        if any(not 0.0 <= a <= 1.0 for a in alphas):
            raise ConfigError("[validate] alphas must lie in [0, 1]")
        if seed is None:
            raise ConfigError("[run] validation requires an explicit 'seed'")
        validate = ValidateSpec(trials, alphas)

    return ScenarioConfig(
        model=model, params=params, generations=generations, seed=seed,
        alpha0=alpha0, count0=count0, pop_size=pop_size,
        history=history, weights=weights,
        csv_path=csv_path, svg_path=svg_path, json_path=json_path,
        sweep=sweep, validate=validate,
    )


def load_config(path: str) -> ScenarioConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc


def config_to_dict(cfg: ScenarioConfig) -> dict[str, dict[str, Any]]:
    """Sectioned plain-dict form, suitable for serialization."""
    doc: dict[str, dict[str, Any]] = {
        "scenario": {"model": cfg.model},
        "params": {
            "sample_size": cfg.params.sample_size,
            "p_plus_e": cfg.params.p_plus_e,
            "p_minus_e": cfg.params.p_minus_e,
        },
        "initial": {},
        "run": {"generations": cfg.generations},
    }
    if cfg.alpha0 is not None:
        doc["initial"]["alpha0"] = cfg.alpha0
    if cfg.count0 is not None:
        doc["initial"]["count0"] = cfg.count0
    if cfg.pop_size is not None:
        doc["initial"]["pop_size"] = cfg.pop_size
    if cfg.history is not None:
        doc["initial"]["history"] = list(cfg.history)
    if cfg.weights is not None:
        doc["initial"]["weights"] = list(cfg.weights.weights)
    if cfg.seed is not None:
        doc["run"]["seed"] = cfg.seed
    output = {}
    for key, value in (("csv", cfg.csv_path), ("svg", cfg.svg_path), ("json", cfg.json_path)):
        if value is not None:
            output[key] = value
    if output:
        doc["output"] = output
    if cfg.sweep is not None:
        sw: dict[str, Any] = {}
        for i, axis in enumerate(cfg.sweep.axes, start=1):
            sw[f"axis{i}_name"] = axis.name
            sw[f"axis{i}_min"] = axis.lo
            sw[f"axis{i}_max"] = axis.hi
            sw[f"axis{i}_steps"] = axis.steps
        sw["outputs"] = list(cfg.sweep.outputs)
        sw["workers"] = cfg.sweep.workers
        doc["sweep"] = sw
    if cfg.validate is not None:
        doc["validate"] = {
            "trials": cfg.validate.trials,
            "alphas": list(cfg.validate.alphas),
        }
    return doc


def _toml_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        escaped = value.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{escaped}"'
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, list):
        return "[" + ", ".join(_toml_value(v) for v in value) + "]"
    raise TypeError(f"cannot serialize {value!r}")


def dumps_config(cfg: ScenarioConfig) -> str:
    """Serialize back to TOML; parse(dumps(cfg)) == cfg."""
    lines = []
    for section, body in config_to_dict(cfg).items():
        if not body:
            continue
        lines.append(f"[{section}]")
        for key, value in body.items():
            lines.append(f"{key} = {_toml_value(value)}")
        lines.append("")
    return "\n".join(lines)
