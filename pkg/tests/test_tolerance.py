"""Tests for the productivity-decision core: thresholds, costs, Zipf model."""

import warnings
from fractions import Fraction
from math import log

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpdyn.tolerance import (
    RuleStats,
    ZipfSpec,
    expected_cost_ecm,
    expected_cost_ranked,
    harmonic,
    intermediate_threshold,
    is_productive,
    productive_base_form,
    threshold_agreement_table,
    tolerance_threshold,
    zipf_frequency,
)


def harmonic_oracle(j: int) -> Fraction:
    """Exact harmonic number by direct rational summation."""
    return sum((Fraction(1, k) for k in range(1, j + 1)), Fraction(0))


class TestHarmonic:
    def test_empty_sum(self):
        assert harmonic(0) == 0.0

    def test_single_term(self):
        assert harmonic(1) == 1.0

    @pytest.mark.parametrize("j", [2, 4, 10, 37])
    def test_matches_exact_summation(self, j):
        assert harmonic(j) == pytest.approx(float(harmonic_oracle(j)), abs=1e-14)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            harmonic(-1)

    def test_asymptotic_crossover(self):
        # expansion evaluated at the last direct-summation point
        j = 10 ** 6
        direct = harmonic(j)
        expansion = log(j) + 0.5772156649015329 + 1 / (2 * j) - 1 / (12 * j * j)
        assert abs(direct - expansion) < 1e-12

    def test_large_argument_difference(self):
        # H(2m) - H(m) = ln 2 - 1/(4m) + O(1/m^2); crosses the expansion boundary
        m = 10 ** 6
        expected = log(2) - 1 / (4 * m)
        assert harmonic(2 * m) - harmonic(m) == pytest.approx(expected, abs=1e-11)


class TestThreshold:
    def test_known_values(self):
        assert tolerance_threshold(9) == pytest.approx(4.096076519820768, rel=1e-15)
        assert tolerance_threshold(100) == pytest.approx(21.71472409516259, rel=1e-15)
        assert tolerance_threshold(3) == pytest.approx(2.730717679880512, rel=1e-15)

    @pytest.mark.parametrize("n", [1, 0, -5])
    def test_small_n_rejected(self, n):
        with pytest.raises(ValueError):
            tolerance_threshold(n)

    def test_decision_examples(self):
        assert is_productive(RuleStats(9, 4)) is True
        assert is_productive(RuleStats(9, 5)) is False
        assert is_productive(RuleStats(100, 0)) is True

    def test_rule_stats_validation(self):
        with pytest.raises(ValueError):
            RuleStats(1, 0)
        with pytest.raises(ValueError):
            RuleStats(10, 11)
        with pytest.raises(ValueError):
            RuleStats(10, -1)

    @given(st.integers(min_value=3, max_value=10_000))
    def test_boundary_exception_counts(self, n):
        assert is_productive(RuleStats(n, 0))
        assert not is_productive(RuleStats(n, n))

    def test_n_equals_two_tolerates_everything(self):
        # 2 / ln 2 = 2.885... exceeds N itself, so even e = N passes
        assert is_productive(RuleStats(2, 2))

    @given(
        st.integers(min_value=3, max_value=10_000),
        st.integers(min_value=0, max_value=10_000),
        st.integers(min_value=1, max_value=100),
    )
    def test_monotone_in_exceptions(self, n, e, extra):
        e = min(e, n)
        e_more = min(e + extra, n)
        if not is_productive(RuleStats(n, e)):
            assert not is_productive(RuleStats(n, e_more))


class TestZipf:
    def test_single_item(self):
        assert zipf_frequency(ZipfSpec(1, 1.0), 1) == 1.0

    def test_two_items(self):
        assert zipf_frequency(ZipfSpec(2, 1.0), 1) == pytest.approx(2 / 3, rel=1e-15)

    def test_uniform_at_zero_exponent(self):
        assert zipf_frequency(ZipfSpec(4, 0.0), 3) == pytest.approx(0.25, rel=1e-15)

    def test_rank_out_of_range(self):
        with pytest.raises(ValueError):
            zipf_frequency(ZipfSpec(5, 1.0), 6)
        with pytest.raises(ValueError):
            zipf_frequency(ZipfSpec(5, 1.0), 0)

    @pytest.mark.parametrize("s", [0.0, 0.5, 1.0, 2.0])
    @pytest.mark.parametrize("n", [1, 10, 1000, 10_000])
    def test_frequencies_sum_to_one(self, n, s):
        spec = ZipfSpec(n, s)
        total = sum(zipf_frequency(spec, r) for r in range(1, n + 1))
        assert abs(total - 1.0) < 1e-12


class TestCosts:
    def test_ranked_known_values(self):
        assert expected_cost_ranked(1) == 1.0
        assert expected_cost_ranked(2) == pytest.approx(4 / 3, rel=1e-15)
        assert expected_cost_ranked(9) == pytest.approx(3.1813718614111375, rel=1e-13)

    def test_ecm_zero_exceptions(self):
        assert expected_cost_ecm(RuleStats(9, 0)) == 0.0

    def test_ecm_all_exceptions_is_ranked(self):
        assert abs(expected_cost_ecm(RuleStats(9, 9)) - expected_cost_ranked(9)) < 1e-12

    @given(st.integers(min_value=2, max_value=2000))
    def test_ecm_degenerate_case_property(self, n):
        assert abs(expected_cost_ecm(RuleStats(n, n)) - expected_cost_ranked(n)) < 1e-12

    def test_ecm_direct_substitution(self):
        # (2/10)(2/1.5) + (8/10) * 2
        assert expected_cost_ecm(RuleStats(10, 2)) == pytest.approx(
            1.8666666666666667, rel=1e-15
        )

    def test_base_form_examples(self):
        assert productive_base_form(RuleStats(9, 0)) is True
        assert productive_base_form(RuleStats(9, 9)) is False  # equal costs, strict
        # oracle: exact-fraction comparison says (50, 10) is tolerated
        assert productive_base_form(RuleStats(50, 10)) is True


class TestIntermediateThreshold:
    # exact-fraction exhaustive scans
    @pytest.mark.parametrize("n,expected", [(2, 1), (9, 4), (50, 13), (100, 23)])
    def test_against_exact_scan(self, n, expected):
        assert intermediate_threshold(n) == expected

    def test_productive_set_is_prefix(self):
        for n in (2, 3, 9, 47, 200):
            e_star = intermediate_threshold(n)
            for e in range(0, n + 1):
                assert productive_base_form(RuleStats(n, e)) == (e <= e_star)

    def test_small_n_rejected(self):
        with pytest.raises(ValueError):
            intermediate_threshold(1)


class TestAgreementTable:
    def test_matches_scalar_scan(self):
        rows = {r[0]: r for r in threshold_agreement_table(300)}
        for n in (2, 9, 100, 300):
            assert rows[n][1] == intermediate_threshold(n)
            assert rows[n][2] == int(tolerance_threshold(n))
            assert rows[n][3] == pytest.approx(
                rows[n][1] / tolerance_threshold(n), rel=1e-15
            )

    def test_no_warnings_emitted(self):
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            threshold_agreement_table(200)


@settings(max_examples=30)
@given(st.integers(min_value=2, max_value=400))
def test_scan_ratio_bounds(n):
    # the scan threshold sits at or above the closed form and within
    # a modest factor of it
    scan = intermediate_threshold(n)
    theta = tolerance_threshold(n)
    assert scan >= int(theta) or n == 2
    assert scan <= 1.5 * theta + 1


def test_asymptotic_ratio_regression():
    # ratios frozen from the pre-build exhaustive scan; they trend toward 1
    rows = {r[0]: r for r in threshold_agreement_table(10_000)}
    assert rows[100][3] == pytest.approx(1.059189142777261, rel=1e-12)
    assert rows[1000][3] == pytest.approx(1.0499788024052847, rel=1e-12)
    assert rows[10_000][3] == pytest.approx(1.0435315641449017, rel=1e-12)
