"""Productivity decisions for rules with exceptions.

A rule covering N items of which e are exceptions is judged productive by
comparing expected serial-lookup costs under two processing models: an
exception-list-then-rule lookup (elsewhere-condition style) versus a fully
itemized frequency-ranked listing.  Under a Zipfian rank-frequency
distribution with exponent 1 this comparison reduces asymptotically to the
closed-form threshold e <= N / ln N.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import log

import numpy as np

EULER_GAMMA = 0.5772156649015329
_DIRECT_SUM_LIMIT = 10 ** 6


@dataclass(frozen=True)
class RuleStats:
    """Item count N and exception count e for one rule."""

    n_items: int
    n_exceptions: int

    def __post_init__(self) -> None:
        if self.n_items < 2:
            raise ValueError(f"n_items must be >= 2, got {self.n_items}")
        if not 0 <= self.n_exceptions <= self.n_items:
            raise ValueError(
                f"n_exceptions must lie in [0, {self.n_items}], got {self.n_exceptions}"
            )


@dataclass(frozen=True)
class ZipfSpec:
    """Rank-frequency law f_i proportional to 1/i**exponent over N items."""

    n_items: int
    exponent: float

    def __post_init__(self) -> None:
        if self.n_items < 1:
            raise ValueError(f"n_items must be >= 1, got {self.n_items}")
        if self.exponent < 0:
            raise ValueError(f"exponent must be >= 0, got {self.exponent}")


@dataclass(frozen=True)
class CostPair:
    cost_ecm: float
    cost_ranked: float


def harmonic(j: int) -> float:
    """j-th harmonic number; 0 for j = 0 (empty sum).

    Direct summation up to 10**6 terms, asymptotic expansion
    ln j + gamma + 1/(2j) - 1/(12 j^2) beyond (the two agree to ~1e-13
    at the crossover).
    """
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    if j == 0:
        return 0.0
    if j <= _DIRECT_SUM_LIMIT:
        return float((1.0 / np.arange(1, j + 1)).sum())
    return log(j) + EULER_GAMMA + 1.0 / (2 * j) - 1.0 / (12 * j * j)


def tolerance_threshold(n_items: int) -> float:
    """Real-valued threshold N / ln N; callers floor it where needed."""
    if n_items < 2:
        raise ValueError(f"n_items must be >= 2, got {n_items}")
    return n_items / log(n_items)


def is_productive(stats: RuleStats) -> bool:
    """Closed-form decision: productive iff e <= N / ln N (non-strict)."""
    return stats.n_exceptions <= tolerance_threshold(stats.n_items)


@lru_cache(maxsize=256)
def _zipf_norm(n_items: int, exponent: float) -> float:
    ranks = np.arange(1, n_items + 1, dtype=float)
    return float((ranks ** -exponent).sum())


def zipf_frequency(spec: ZipfSpec, rank: int) -> float:
    if not 1 <= rank <= spec.n_items:
        raise ValueError(f"rank must lie in [1, {spec.n_items}], got {rank}")
    return rank ** -spec.exponent / _zipf_norm(spec.n_items, spec.exponent)


def expected_cost_ranked(n_items: int) -> float:
    """Expected lookup steps in a fully ranked listing of N items: N / H_N."""
    if n_items < 1:
        raise ValueError(f"n_items must be >= 1, got {n_items}")
    return n_items / harmonic(n_items)


def expected_cost_ecm(stats: RuleStats) -> float:
    """Expected lookup steps with e ranked exceptions listed before the rule.

    (e/N)(e/H_e) + (1 - e/N) e, with the e = 0 case defined as 0 by the
    limit of the whole expression (no list to traverse).
    """
    e, n = stats.n_exceptions, stats.n_items
    if e == 0:
        return 0.0
    return (e / n) * (e / harmonic(e)) + (1 - e / n) * e


def costs(stats: RuleStats) -> CostPair:
    return CostPair(expected_cost_ecm(stats), expected_cost_ranked(stats.n_items))


def productive_base_form(stats: RuleStats) -> bool:
    """Cost-comparison decision: productive iff T(N, e) < T(N, N) (strict)."""
    return expected_cost_ecm(stats) < expected_cost_ranked(stats.n_items)


def intermediate_threshold(n_items: int) -> int:
    """Largest e in [0, N] that the cost comparison tolerates.

    Exhaustive scan; the productive set is expected to be a prefix
    {0, ..., e*} but this is verified rather than assumed.
    """
    if n_items < 2:
        raise ValueError(f"n_items must be >= 2, got {n_items}")
    n = n_items
    e = np.arange(1, n + 1, dtype=float)
    h = np.cumsum(1.0 / e)
    cost = (e / n) * (e / h) + (1 - e / n) * e
    cost[-1] = n / h[-1]  # e = N degenerates to the ranked cost, exactly
    productive = np.concatenate(([True], cost < n / h[-1]))  # e = 0 costs 0
    hits = np.flatnonzero(productive)
    largest = int(hits[-1])
    if largest + 1 != len(hits):
        warnings.warn(
            f"productive set for N={n} is not a prefix of [0, N]; "
            f"returning largest tolerated e={largest}",
            stacklevel=2,
        )
    return largest


def threshold_agreement_table(n_max: int) -> list[tuple[int, int, int, float]]:
    """Rows (N, scan threshold, floor(N/ln N), scan/real-threshold ratio).

    Compares the exhaustive cost-scan threshold with the closed form for
    every N in [2, n_max].
    """
    if n_max < 2:
        raise ValueError(f"n_max must be >= 2, got {n_max}")
    h = np.cumsum(1.0 / np.arange(1, n_max + 1, dtype=float))
    e_all = np.arange(1, n_max + 1, dtype=float)
    e2_over_h = e_all * e_all / h
    rows = []
    for n in range(2, n_max + 1):
        e = e_all[:n]
        rhs = n / h[n - 1]
        cost = e2_over_h[:n] / n + (1 - e / n) * e
        cost[-1] = rhs  # e = N degenerates to the ranked cost, exactly
        productive = cost < rhs
        hits = np.flatnonzero(productive)
        largest = int(hits[-1]) + 1 if hits.size else 0
        theta = n / log(n)
        rows.append((n, largest, int(theta), largest / theta))
    return rows
