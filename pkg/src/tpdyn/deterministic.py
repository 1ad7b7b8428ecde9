"""Infinite-population update map for populations of threshold learners.

State is the proportion alpha of speakers holding the rule productive.
Each learner in the next generation sees N i.i.d. draws from the adult
mixture and keeps the rule iff the number of exception draws stays within
floor(N / ln N); with an infinite population the next alpha equals the
probability of that event, a binomial lower tail in the mixture exception
probability.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import exp, log

from .tail import log_binomial, lower_tail, productivity_cutoff


@dataclass(frozen=True)
class EnvParams:
    """Free parameters of the model.

    sample_size: number N of data points each learner consumes.
    p_plus_e: probability that a productive-rule speaker produces an exception.
    p_minus_e: probability that a non-productive speaker produces an exception.

    The complementary rule-production probabilities are always derived as
    1 - p_plus_e and 1 - p_minus_e, never stored.
    """

    sample_size: int
    p_plus_e: float
    p_minus_e: float

    def __post_init__(self) -> None:
        if self.sample_size < 2:
            raise ValueError(f"sample_size must be >= 2, got {self.sample_size}")
        for name in ("p_plus_e", "p_minus_e"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")

    @property
    def cutoff(self) -> int:
        return productivity_cutoff(self.sample_size)

    def check_empirical_constraints(self) -> None:
        """Warn when the usual empirical orderings fail; never an error."""
        if not self.p_minus_e > self.p_plus_e:
            warnings.warn("expected p_minus_e > p_plus_e does not hold", stacklevel=2)
        if not 1 - self.p_plus_e > self.p_plus_e:
            warnings.warn(
                "expected productive speakers to produce the rule more often "
                "than exceptions (p_plus_e < 1/2)", stacklevel=2)
        if not self.p_minus_e > 1 - self.p_minus_e:
            warnings.warn(
                "expected non-productive speakers to produce exceptions more "
                "often than the rule (p_minus_e > 1/2)", stacklevel=2)


@dataclass(frozen=True)
class Trajectory:
    alphas: tuple[float, ...]
    variant_freqs: tuple[float, ...]


@dataclass(frozen=True)
class FixedPointReport:
    location: float
    derivative_value: float
    stability: str  # "stable" | "unstable" | "marginal"


@dataclass(frozen=True)
class HomogeneousReport:
    f_at_zero: float
    f_at_one: float
    stays_homogeneous_plus: bool
    stays_homogeneous_minus: bool
    single_generation_flip_possible: bool


def _check_alpha(alpha: float) -> None:
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")


def exception_prob(alpha: float, params: EnvParams) -> float:
    """Probability that one draw from the adult mixture is an exception."""
    _check_alpha(alpha)
    return alpha * params.p_plus_e + (1 - alpha) * params.p_minus_e


def variant_frequency(alpha: float, params: EnvParams) -> float:
    """Population rate of rule-conforming output, 1 - exception_prob."""
    _check_alpha(alpha)
    return alpha * (1 - params.p_plus_e) + (1 - alpha) * (1 - params.p_minus_e)


def step(alpha: float, params: EnvParams) -> float:
    """One generation of the update map."""
    return lower_tail(params.cutoff, params.sample_size, exception_prob(alpha, params))


def trajectory(alpha0: float, params: EnvParams, generations: int) -> Trajectory:
    if generations < 0:
        raise ValueError(f"generations must be >= 0, got {generations}")
    alphas = [alpha0]
    for _ in range(generations):
        alphas.append(step(alphas[-1], params))
    freqs = [variant_frequency(a, params) for a in alphas]
    return Trajectory(tuple(alphas), tuple(freqs))


def derivative(alpha: float, params: EnvParams) -> float:
    """Closed-form slope of the update map at alpha.

    (p_minus - p_plus) * N * C(N-1, c) * P^c * (1-P)^(N-c-1) with
    c = floor(N / ln N); evaluated in log space, with 0^0 = 1 at the
    boundary values of P.
    """
    n, c = params.sample_size, params.cutoff
    if c >= n:  # exception budget covers every draw: map is constant 1
        return 0.0
    p = exception_prob(alpha, params)
    lead = (params.p_minus_e - params.p_plus_e) * n
    if lead == 0.0:
        return 0.0
    if p == 0.0:
        mag = 0.0 if c >= 1 else 1.0
    elif p == 1.0:
        mag = 0.0 if n - c - 1 >= 1 else 1.0
    else:
        mag = exp(c * log(p) + (n - c - 1) * log(1 - p))
    return lead * exp(log_binomial(n - 1, c)) * mag


def fixed_points(
    params: EnvParams, grid_size: int = 1001, tol: float = 1e-12
) -> list[FixedPointReport]:
    """Roots of step(alpha) - alpha in [0, 1].

    Uniform sign-change scan followed by bisection; endpoints qualify only
    when their residual is already within tol.  A grid too coarse to
    isolate close roots will miss them; no detection is attempted.
    """
    if grid_size < 2:
        raise ValueError(f"grid_size must be >= 2, got {grid_size}")
    if tol <= 0:
        raise ValueError(f"tol must be > 0, got {tol}")

    def g(a: float) -> float:
        return step(a, params) - a

    roots: list[float] = []
    xs = [i / (grid_size - 1) for i in range(grid_size)]
    gs = [g(x) for x in xs]
    for i, (x, gx) in enumerate(zip(xs, gs)):
        if abs(gx) <= tol:
            if x in (0.0, 1.0) or not roots or abs(x - roots[-1]) > 1e-9:
                roots.append(x)
            continue
        if i + 1 < grid_size and gx * gs[i + 1] < 0:
            lo, hi, glo = x, xs[i + 1], gx
            while hi - lo > 1e-16:
                mid = 0.5 * (lo + hi)
                gm = g(mid)
                if abs(gm) <= tol:
                    lo = hi = mid
                    break
                if glo * gm < 0:
                    hi = mid
                else:
                    lo, glo = mid, gm
            root = 0.5 * (lo + hi)
            if not roots or abs(root - roots[-1]) > 1e-9:
                roots.append(root)

    reports = []
    for r in roots:
        d = derivative(r, params)
        if abs(abs(d) - 1.0) <= 1e-9:
            stability = "marginal"
        elif abs(d) < 1.0:
            stability = "stable"
        else:
            stability = "unstable"
        reports.append(FixedPointReport(r, d, stability))
    return reports


def homogeneous_report(params: EnvParams) -> HomogeneousReport:
    """Boundary behavior of the map at the two homogeneous populations."""
    f0 = step(0.0, params)
    f1 = step(1.0, params)
    return HomogeneousReport(
        f_at_zero=f0,
        f_at_one=f1,
        stays_homogeneous_plus=(f1 == 1.0),
        stays_homogeneous_minus=(f0 == 0.0),
        single_generation_flip_possible=(f1 == 0.0 or f0 == 1.0),
    )
