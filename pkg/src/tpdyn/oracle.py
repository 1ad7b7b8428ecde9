"""Monte Carlo simulation of individual learners.

Deliberately independent of the analytic tail: each simulated learner
draws raw Bernoulli outcomes, counts exceptions, and applies the
threshold decision to the counted sample.  Used to cross-check the
update maps.  Trial i of a batch uses the stream-i draws of the seeded
counter generator (see rng), so single-trial and batched runs agree
bit-for-bit and trials can run in any order.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import rng
from .deterministic import EnvParams, exception_prob
from .markov import ChainSpec
from .tolerance import tolerance_threshold


@dataclass(frozen=True)
class LearnerOutcome:
    exceptions_seen: int
    verdict: str  # "R_plus" | "R_minus"


@dataclass(frozen=True)
class EmpiricalEstimate:
    point: float
    std_error: float
    trials: int
    seed: int


def _verdicts(exception_counts: np.ndarray, sample_size: int) -> np.ndarray:
    """Boolean convergence verdicts from raw exception counts."""
    return exception_counts <= tolerance_threshold(sample_size)


def simulate_learner(
    mixture_exception_prob: float, params: EnvParams, seed: int, trial: int = 0
) -> LearnerOutcome:
    """One learner: N Bernoulli draws, count, threshold decision."""
    if not 0.0 <= mixture_exception_prob <= 1.0:
        raise ValueError(f"probability must lie in [0, 1], got {mixture_exception_prob}")
    draws = rng.uniforms(seed, trial, params.sample_size) < mixture_exception_prob
    seen = int(draws.sum())
    converged = bool(_verdicts(np.array(seen), params.sample_size))
    return LearnerOutcome(seen, "R_plus" if converged else "R_minus")


def _empirical_fraction(prob: float, params: EnvParams, trials: int, seed: int) -> float:
    """Fraction of converging learners over `trials` seeded simulations."""
    u = rng.uniform_matrix(seed, trials, params.sample_size)
    counts = (u < prob).sum(axis=1)
    return float(_verdicts(counts, params.sample_size).mean())


def empirical_convergence_prob(
    alpha: float, params: EnvParams, trials: int, seed: int
) -> EmpiricalEstimate:
    """Monte Carlo estimate of the one-generation convergence probability.

    Depends on (alpha, p_plus_e, p_minus_e) only through the mixture
    exception probability, so parameter triples with equal mixtures and
    equal seeds produce identical estimates.
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    point = _empirical_fraction(exception_prob(alpha, params), params, trials, seed)
    return EmpiricalEstimate(point, sqrt(point * (1 - point) / trials), trials, seed)


def empirical_generation(spec: ChainSpec, current_count: int, seed: int) -> int:
    """Simulate all S learners of one generation; return the successor count.

    Distributionally equivalent to one step of the sampled chain but built
    from raw per-learner draws, not from the analytic successor pmf.
    """
    spec.check_count(current_count)
    prob = exception_prob(current_count / spec.pop_size, spec.params)
    u = rng.uniform_matrix(seed, spec.pop_size, spec.params.sample_size)
    counts = (u < prob).sum(axis=1)
    return int(_verdicts(counts, spec.params.sample_size).sum())
