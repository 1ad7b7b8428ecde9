"""Update map for learners drawing data from the last M generations.

Each prior generation s contributes a fixed share of the learner's input;
its exception rate is the cohort mixture g(alpha_s).  The overall
exception probability is the weight-averaged mixture, fed through the
same binomial lower tail as the single-generation map.
"""

from __future__ import annotations

from dataclasses import dataclass

from .deterministic import EnvParams
from .tail import lower_tail

WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class CohortWeights:
    """Input shares of the M previous generations, oldest first; sum to 1.

    Off-by-1e-12 sums are accepted; anything worse is rejected rather than
    silently renormalized.
    """

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.weights) < 1:
            raise ValueError("at least one generation weight is required")
        if any(w < 0 for w in self.weights):
            raise ValueError(f"weights must be nonnegative, got {self.weights}")
        total = sum(self.weights)
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights must sum to 1 (got {total!r}); not renormalizing")

    def __len__(self) -> int:
        return len(self.weights)


def g_term(alpha_s: float, outcome: str, params: EnvParams) -> float:
    """Cohort mixture rate for one prior generation.

    outcome "exception": alpha_s * p_plus_e + (1 - alpha_s) * p_minus_e;
    outcome "rule" is the complementary mixture.
    """
    if not 0.0 <= alpha_s <= 1.0:
        raise ValueError(f"alpha_s must lie in [0, 1], got {alpha_s}")
    if outcome == "exception":
        return alpha_s * params.p_plus_e + (1 - alpha_s) * params.p_minus_e
    if outcome == "rule":
        return alpha_s * (1 - params.p_plus_e) + (1 - alpha_s) * (1 - params.p_minus_e)
    raise ValueError(f"outcome must be 'exception' or 'rule', got {outcome!r}")


def mixture_exception_prob(
    history: tuple[float, ...], weights: CohortWeights, params: EnvParams
) -> float:
    if len(history) != len(weights):
        raise ValueError(
            f"history length {len(history)} != weights length {len(weights)}"
        )
    return sum(
        w * g_term(a, "exception", params) for w, a in zip(weights.weights, history)
    )


def step_multigen(
    history: tuple[float, ...], weights: CohortWeights, params: EnvParams
) -> float:
    """Next proportion of productive-rule speakers given the last M alphas
    (oldest first)."""
    q = mixture_exception_prob(history, weights, params)
    return lower_tail(params.cutoff, params.sample_size, q)


def trajectory_multigen(
    initial_history: tuple[float, ...],
    weights: CohortWeights,
    params: EnvParams,
    generations: int,
) -> list[float]:
    """Roll the history forward, emitting each newly produced alpha."""
    if generations < 0:
        raise ValueError(f"generations must be >= 0, got {generations}")
    history = list(initial_history)
    if len(history) != len(weights):
        raise ValueError(
            f"history length {len(history)} != weights length {len(weights)}"
        )
    out = []
    for _ in range(generations):
        nxt = step_multigen(tuple(history), weights, params)
        out.append(nxt)
        history = history[1:] + [nxt]
    return out
