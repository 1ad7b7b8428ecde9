"""Numerically stable binomial mass and lower-tail evaluation.

The update maps in this package are binomial lower tails with cutoff
floor(N / ln N).  Terms are generated by the pmf ratio recurrence
term_{k+1} = term_k * ((n-k)/(k+1)) * (p/(1-p)), run in log space so that
(1-p)^n may underflow without destroying the sum, and combined by a
max-shifted exponential sum.  Stable for n up to at least 1e5.
"""

from __future__ import annotations

import logging
from math import lgamma, log, log1p

import numpy as np

logger = logging.getLogger(__name__)

_INTEGER_PROXIMITY = 1e-12


def productivity_cutoff(n: int) -> int:
    """floor(N / ln N), the exception budget of the closed-form decision.

    Logs when N / ln N sits within 1e-12 of an integer, where the floor
    is sensitive to rounding.
    """
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    theta = n / log(n)
    nearest = round(theta)
    if abs(theta - nearest) < _INTEGER_PROXIMITY:
        logger.warning(
            "N/ln N = %.17g for N=%d is within 1e-12 of integer %d; "
            "floor may be rounding-sensitive", theta, n, nearest,
        )
    return int(theta)


def _log_terms(cutoff: int, n: int, p: float) -> np.ndarray:
    """log pmf of Binomial(n, p) at k = 0..cutoff, for p strictly in (0, 1)."""
    logit = log(p) - log1p(-p)
    k = np.arange(1, cutoff + 1, dtype=float)
    increments = np.log((n - k + 1) / k) + logit
    out = np.empty(cutoff + 1)
    out[0] = n * log1p(-p)
    out[1:] = out[0] + np.cumsum(increments)
    return out


def lower_tail(cutoff: int, n: int, p: float) -> float:
    """P(X <= cutoff) for X ~ Binomial(n, p)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if cutoff < 0:
        return 0.0
    if cutoff >= n:
        return 1.0
    if p == 0.0:
        return 1.0
    if p == 1.0:
        return 0.0  # cutoff < n here
    lt = _log_terms(cutoff, n, p)
    m = lt.max()
    return float(min(1.0, np.exp(m) * np.exp(lt - m).sum()))


def pmf_row(n: int, p: float) -> np.ndarray:
    """Full Binomial(n, p) pmf over k = 0..n via the same log-space path."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    out = np.zeros(n + 1)
    if p == 0.0:
        out[0] = 1.0
    elif p == 1.0:
        out[n] = 1.0
    else:
        out[:] = np.exp(_log_terms(n, n, p))
    return out


def log_binomial(n: int, k: int) -> float:
    """log of the binomial coefficient C(n, k)."""
    if not 0 <= k <= n:
        raise ValueError(f"k must lie in [0, {n}], got {k}")
    return lgamma(n + 1) - lgamma(k + 1) - lgamma(n - k + 1)
