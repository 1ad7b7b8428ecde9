"""Finite-population dynamics as a Markov chain over speaker counts.

A generation of S adult speakers is summarized by the count of speakers
holding the rule productive.  Each of the S learners in the next
generation independently converges with probability f(count/S), so the
successor count is Binomial(S, f(count/S)) and the chain has S + 1 states.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import rng
from .deterministic import EnvParams, step
from .tail import pmf_row

DEFAULT_MATRIX_CAP = 5000


class ResourceLimitError(Exception):
    """Requested computation exceeds a configured resource cap."""


class PowerIterationError(Exception):
    """Power iteration failed to reach the requested residual."""

    def __init__(self, residual: float, iterations: int):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"no convergence after {iterations} iterations (residual {residual:.3e})"
        )


@dataclass(frozen=True)
class ChainSpec:
    pop_size: int
    params: EnvParams

    def __post_init__(self) -> None:
        if self.pop_size < 1:
            raise ValueError(f"pop_size must be >= 1, got {self.pop_size}")

    def check_count(self, count: int) -> None:
        if not 0 <= count <= self.pop_size:
            raise ValueError(f"count must lie in [0, {self.pop_size}], got {count}")


@dataclass(frozen=True)
class StationaryResult:
    """Long-run distribution report.

    With absorbing states present there is no single limiting
    distribution; the point mass on each absorbing state is listed in
    `components` and `distribution` holds the (flagged) power-iteration
    output from the uniform start.
    """

    distribution: np.ndarray
    residual: float
    iterations: int
    absorbing: tuple[int, ...] = ()
    components: tuple[np.ndarray, ...] = field(default_factory=tuple)

    @property
    def has_absorbing(self) -> bool:
        return bool(self.absorbing)


def convergence_prob(count: int, spec: ChainSpec) -> float:
    """Probability one learner converges given the current count; the same
    map (and code path) as the infinite-population step."""
    spec.check_count(count)
    return step(count / spec.pop_size, spec.params)


def transition_matrix(spec: ChainSpec, cap: int = DEFAULT_MATRIX_CAP) -> np.ndarray:
    """(S+1) x (S+1) row-stochastic matrix; row i is the Binomial(S, f(i/S)) pmf."""
    s = spec.pop_size
    if s > cap:
        raise ResourceLimitError(
            f"pop_size {s} exceeds dense-matrix cap {cap}; "
            "use sampling or per-row evaluation instead"
        )
    return np.vstack([pmf_row(s, convergence_prob(i, spec)) for i in range(s + 1)])


def successor_counts(spec: ChainSpec, count: int, n_draws: int, seed: int) -> np.ndarray:
    """n_draws i.i.d. successor counts from state `count` (CDF inversion)."""
    spec.check_count(count)
    cdf = np.cumsum(pmf_row(spec.pop_size, convergence_prob(count, spec)))
    u = rng.uniforms(seed, count, n_draws)
    return np.searchsorted(cdf, u, side="right").clip(0, spec.pop_size)


def sample_trajectory(
    spec: ChainSpec, initial_count: int, generations: int, seed: int
) -> list[int]:
    """Seeded chain sample; identical inputs reproduce identical output."""
    spec.check_count(initial_count)
    if generations < 0:
        raise ValueError(f"generations must be >= 0, got {generations}")
    cdf_cache: dict[int, np.ndarray] = {}
    counts = [initial_count]
    for t in range(1, generations + 1):
        c = counts[-1]
        if c not in cdf_cache:
            cdf_cache[c] = np.cumsum(pmf_row(spec.pop_size, convergence_prob(c, spec)))
        u = rng.uniforms(seed, t, 1)[0]
        nxt = int(np.searchsorted(cdf_cache[c], u, side="right"))
        counts.append(min(nxt, spec.pop_size))
    return counts


def absorbing_states(matrix: np.ndarray) -> list[int]:
    """Indices i with T[i, i] >= 1 - 1e-12."""
    diag = np.diagonal(matrix)
    return [int(i) for i in np.flatnonzero(diag >= 1 - 1e-12)]


def stationary_distribution(
    matrix: np.ndarray, tol: float = 1e-12, max_iters: int = 100_000
) -> StationaryResult:
    """Power iteration from the uniform vector until ||pi T - pi||_1 <= tol."""
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise ValueError(f"matrix must be square, got shape {matrix.shape}")
    row_sums = matrix.sum(axis=1)
    if np.any(matrix < 0) or np.any(np.abs(row_sums - 1.0) > 1e-10):
        raise ValueError("matrix is not row-stochastic")

    absorbing = tuple(absorbing_states(matrix))
    pi = np.full(n, 1.0 / n)
    residual = float("inf")
    for it in range(1, max_iters + 1):
        nxt = pi @ matrix
        residual = float(np.abs(nxt - pi).sum())
        pi = nxt / nxt.sum()
        if residual <= tol:
            components = tuple(
                np.eye(n)[i] for i in absorbing
            )
            return StationaryResult(pi, residual, it, absorbing, components)
    raise PowerIterationError(residual, max_iters)
