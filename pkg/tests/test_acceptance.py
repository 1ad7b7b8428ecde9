"""Acceptance gate: one pass/fail line per criterion.

Each criterion prints `ACCEPTANCE <id>: PASS|FAIL <detail>` before
asserting, so the summary survives in captured output either way.
Criteria 1b and 1c encode the claimed transition shape of the flagship
scenario literally; see the project decision log for why they are
expected to fail against the dynamics as actually specified.
"""

import numpy as np
import pytest
from scipy.stats import chi2

from tpdyn import rng
from tpdyn.deterministic import (
    EnvParams,
    derivative,
    exception_prob,
    fixed_points,
    step,
    trajectory,
)
from tpdyn.markov import ChainSpec, sample_trajectory, transition_matrix
from tpdyn.multigen import CohortWeights, step_multigen, trajectory_multigen
from tpdyn.oracle import empirical_convergence_prob
from tpdyn.tolerance import threshold_agreement_table

FLAGSHIP_PARAMS = EnvParams(9, 0.2, 0.7)
FLAGSHIP_ALPHA0 = 0.9


def _report(criterion: str, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {criterion}: {'PASS' if ok else 'FAIL'} {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def _uniform_params(seed: int, count: int, lo: float = 0.0, hi: float = 1.0):
    u = rng.uniforms(seed, 0, count) * (hi - lo) + lo
    v = rng.uniforms(seed, 1, count) * (hi - lo) + lo
    a = rng.uniforms(seed, 2, count)
    return u, v, a


class TestCriterion1FlagshipScenario:
    """N=9, alpha0=0.9, p+=0.2, p-=0.7: convergence, duration, shape."""

    def _trajectory(self):
        return trajectory(FLAGSHIP_ALPHA0, FLAGSHIP_PARAMS, 30).alphas

    def test_1a_converges_to_located_fixed_point(self):
        alphas = self._trajectory()
        stable = [r for r in fixed_points(FLAGSHIP_PARAMS) if r.stability == "stable"]
        gap = min(abs(alphas[-1] - r.location) for r in stable)
        _report("1a", gap <= 1e-6, f"endpoint-to-fixed-point gap {gap:.3e}")

    def test_1b_transition_duration_about_ten_generations(self):
        alphas = self._trajectory()
        fp = fixed_points(FLAGSHIP_PARAMS)[0].location
        # last generation still within 0.05 of the start
        start = max(t for t, a in enumerate(alphas) if abs(a - FLAGSHIP_ALPHA0) <= 0.05)
        # first generation within 0.05 of the fixed point
        end = min(t for t, a in enumerate(alphas) if abs(a - fp) <= 0.05)
        duration = max(end - start, 0)
        _report("1b", 5 <= duration <= 15, f"transition duration {duration} generations")

    def test_1c_s_shape_max_decrease_interior(self):
        alphas = self._trajectory()
        deltas = np.diff(alphas)
        # ignore one-ulp rounding wiggles once the orbit has converged
        decreases = np.flatnonzero(deltas < -1e-12)
        if decreases.size == 0:
            _report("1c", False, "trajectory never decreases beyond rounding noise")
        peak = int(decreases[np.argmin(deltas[decreases])])
        interior = 0 < peak < len(deltas) - 1
        _report("1c", interior, f"largest decrease at generation {peak}")


def test_criterion_2_oracle_equivalence():
    """Analytic step vs raw-draw Monte Carlo, 200 random configurations."""
    trials, n_cfg = 10_000, 200
    sizes = [(9, 50, 500)[int(x * 3)] for x in rng.uniforms(101, 3, n_cfg)]
    pp, pm, alphas = _uniform_params(101, n_cfg)
    hits = 0
    for i in range(n_cfg):
        params = EnvParams(sizes[i], float(pp[i]), float(pm[i]))
        alpha = float(alphas[i])
        analytic = step(alpha, params)
        est = empirical_convergence_prob(alpha, params, trials, seed=9000 + i)
        se = (analytic * (1 - analytic) / trials) ** 0.5
        if abs(analytic - est.point) <= 4 * se:
            hits += 1
    _report("2", hits >= 0.99 * n_cfg, f"{hits}/{n_cfg} configurations agree")


def test_criterion_3_derivative_closed_form():
    """Closed-form map derivative vs central finite differences."""
    h = 1e-6
    grid = np.linspace(0.01, 0.99, 99)
    pp, pm, _ = _uniform_params(202, 20)
    sizes = [(9, 50, 500)[int(x * 3)] for x in rng.uniforms(202, 3, 20)]
    worst = 0.0
    for i in range(20):
        params = EnvParams(sizes[i], float(pp[i]), float(pm[i]))
        for alpha in grid:
            fd = (step(alpha + h, params) - step(alpha - h, params)) / (2 * h)
            worst = max(worst, abs(derivative(float(alpha), params) - fd))
    _report("3", worst <= 1e-6, f"worst closed-form/finite-difference gap {worst:.3e}")


def test_criterion_4_homogeneous_population_theorems():
    """f(1) and f(0) hit 0 or 1 exactly iff a mixture probability degenerates."""
    ok = True
    detail = "all equivalences hold"
    interior, _, _ = _uniform_params(303, 40, lo=0.05, hi=0.95)
    for n in (3, 9, 50, 211):
        # degenerate directions: exact equality
        if step(1.0, EnvParams(n, 0.0, 0.5)) != 1.0:
            ok, detail = False, f"f(1) != 1 at p+=0, N={n}"
        if step(1.0, EnvParams(n, 1.0, 0.5)) != 0.0:
            ok, detail = False, f"f(1) != 0 at p+=1, N={n}"
        if step(0.0, EnvParams(n, 0.5, 1.0)) != 0.0:
            ok, detail = False, f"f(0) != 0 at p-=1, N={n}"
        if step(0.0, EnvParams(n, 0.5, 0.0)) != 1.0:
            ok, detail = False, f"f(0) != 1 at p-=0, N={n}"
        # non-degenerate directions: strict interiority
        for p in interior:
            f1 = step(1.0, EnvParams(n, float(p), 0.5))
            f0 = step(0.0, EnvParams(n, 0.5, float(p)))
            if not (0.0 < f1 < 1.0 and 0.0 < f0 < 1.0):
                ok, detail = False, f"interior p={p:.4f} not strict at N={n}"
    _report("4", ok, detail)


def test_criterion_5_markov_chain_validity():
    """Row-stochasticity, row-mean identity, chi-square of sampled steps."""
    ok = True
    detail = "all chains valid"
    for s in (1, 10, 100):
        spec = ChainSpec(s, FLAGSHIP_PARAMS)
        t = transition_matrix(spec)
        if np.max(np.abs(t.sum(axis=1) - 1.0)) > 1e-12 or np.any(t < 0):
            ok, detail = False, f"S={s} matrix not row-stochastic"
        js = np.arange(s + 1)
        for i in range(s + 1):
            if abs(float(t[i] @ js) / s - step(i / s, FLAGSHIP_PARAMS)) > 1e-10:
                ok, detail = False, f"S={s} row {i} mean identity violated"
        for i in {0, s // 2, s}:
            draws = np.zeros(s + 1)
            # 10^5 one-step draws from state i via the seeded sampler
            for rep, nxt in enumerate(
                _one_step_draws(spec, i, 100_000, seed=5000 + s)
            ):
                draws[nxt] += 1
            expected = t[i] * 100_000
            keep = expected >= 5
            pooled_exp = expected[~keep].sum()
            stat = float(((draws[keep] - expected[keep]) ** 2 / expected[keep]).sum())
            if pooled_exp > 0:
                stat += (draws[~keep].sum() - pooled_exp) ** 2 / pooled_exp
                dof = int(keep.sum())
            else:
                dof = max(int(keep.sum()) - 1, 1)
            if stat >= chi2.ppf(0.999, dof):
                ok, detail = False, f"S={s} row {i} chi-square {stat:.1f} (dof {dof})"
    _report("5", ok, detail)


def _one_step_draws(spec, state, n, seed):
    from tpdyn.markov import successor_counts

    return successor_counts(spec, state, n, seed)


def test_criterion_6_mean_field_consistency():
    """Chain endpoints at S=100 track the deterministic fixed point."""
    spec = ChainSpec(100, FLAGSHIP_PARAMS)
    fp = fixed_points(FLAGSHIP_PARAMS)[0].location
    ends = np.array(
        [sample_trajectory(spec, 90, 50, seed=s)[-1] / 100 for s in range(1000)]
    )
    se = float(ends.std(ddof=1) / np.sqrt(len(ends)))
    gap = abs(float(ends.mean()) - fp)
    _report("6", gap <= 3 * se, f"mean endpoint off by {gap:.2e} (3 SE = {3 * se:.2e})")


def test_criterion_7_multigen_reduction():
    """Weight (0,0,1) reduces bitwise; equal histories are weight-independent;
    constant-history fixed points coincide with the single-generation ones."""
    ok = True
    detail = "reduction, invariance, and coincidence all hold"
    w_last = CohortWeights((0.0, 0.0, 1.0))
    pp, pm, alphas = _uniform_params(404, 50)
    for i in range(50):
        params = EnvParams(9, float(pp[i]), float(pm[i]))
        a = float(alphas[i])
        if step_multigen((0.3, 0.8, a), w_last, params) != step(a, params):
            ok, detail = False, f"bitwise reduction broken at config {i}"
        mixed = CohortWeights((0.25, 0.35, 0.4))
        lhs = step_multigen((a, a, a), mixed, params)
        rhs = step_multigen((a, a, a), w_last, params)
        if abs(lhs - rhs) > 1e-15:
            ok, detail = False, f"equal-history invariance broken at config {i}"
    fp = fixed_points(FLAGSHIP_PARAMS)[0].location
    traj = trajectory_multigen((fp, fp, fp), CohortWeights((0.2, 0.3, 0.5)),
                               FLAGSHIP_PARAMS, 100)
    drift = max(abs(a - fp) for a in traj)
    if drift > 1e-9:
        ok, detail = False, f"constant-history fixed point drifts by {drift:.2e}"
    _report("7", ok, detail)


def test_criterion_8_threshold_agreement_report():
    """Scan vs closed-form thresholds over N up to 10^4: pinned ratios that
    trend monotonically toward 1."""
    rows = {r[0]: r for r in threshold_agreement_table(10_000)}
    pinned = {
        100: 1.059189142777261,
        1000: 1.0499788024052847,
        10_000: 1.0435315641449017,
    }
    ok = True
    detail = "pinned ratios reproduced; trend monotone toward 1"
    for n, expected in pinned.items():
        if rows[n][3] != pytest.approx(expected, rel=1e-12):
            ok, detail = False, f"ratio at N={n} is {rows[n][3]!r}"
    r100, r1000, r10000 = (rows[n][3] for n in (100, 1000, 10_000))
    if not (r100 > r1000 > r10000 > 1.0):
        ok, detail = False, f"ratios not trending toward 1: {r100}, {r1000}, {r10000}"
    _report("8", ok, detail)
