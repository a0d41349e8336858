"""Verification-layer tests: bound pairs, chain separation, kernels, the
sum/integral sandwich, and the log-concavity table."""

from fractions import Fraction

import pytest

from palsums.analysis import (
    SANDWICH_CATALOG,
    asymptotic_error_metric,
    bound_pair,
    kernel_eq1_check,
    kernel_eq2_check,
    kernel_eq3_check,
    layer3_transfer_check,
    log_concavity_row,
    log_concavity_scan,
    sum_integral_sandwich,
    tail_inequality_check,
    tail_inequality_value,
    verify_monotone_chain,
)
from palsums.enclosure import format_directed


def mid_fraction(enc) -> Fraction:
    return Fraction(*enc.midpoint().as_integer_ratio())


class TestBoundPair:
    @pytest.mark.parametrize(
        "b,alpha,beta",
        [
            (2, "2.5828238", "2.2797059"),
            (11, "3.4422399", "3.4363567"),
            (14, "3.6144306", "3.6109440"),
        ],
    )
    def test_displayed_pairs(self, b, alpha, beta):
        upper, lower = bound_pair(b)
        assert format_directed(upper.hi, 7, "up") == alpha
        assert format_directed(lower.lo, 7, "down") == beta


class TestMonotoneChain:
    def test_through_16(self):
        report = verify_monotone_chain(16)
        assert report.ok
        assert len(report.pairs) == 14
        assert all(p.separated for p in report.pairs)

    def test_vacuous(self):
        report = verify_monotone_chain(2)
        assert report.ok
        assert report.pairs == ()

    def test_rejects_tiny(self):
        with pytest.raises(ValueError):
            verify_monotone_chain(1)


class TestKernels:
    @pytest.mark.parametrize("b", [50, 51, 64, 100, 200])
    def test_all_kernels_hold(self, b):
        for check in (kernel_eq1_check, kernel_eq2_check, kernel_eq3_check):
            report = check(b)
            assert report.all_hold
            assert report.counterexample is None
            assert report.b == b

    def test_kernel_ids(self):
        assert kernel_eq1_check(50).kernel_id == "eq1-kernel"
        assert kernel_eq2_check(50).kernel_id == "eq2-kernel"
        assert kernel_eq3_check(50).kernel_id == "eq3-kernel"

    def test_range_preconditions(self):
        with pytest.raises(ValueError):
            kernel_eq1_check(3)
        with pytest.raises(ValueError):
            kernel_eq3_check(5)

    def test_eq1_matches_fraction_oracle(self):
        # re-derive the b=10 verdict with raw rational arithmetic
        b = 10
        ok = True
        for a in range(1, b // 2):
            for c in range(0, b - 2 * a - 1):
                lhs = Fraction(1, a * (b + 1) ** 2 + c * (b + 1) + a)
                rhs = Fraction(1, a * b**2 + (2 * a + c + 1) * b + a)
                ok = ok and lhs - rhs > 0
        assert kernel_eq1_check(b).all_hold == ok

    def test_eq2_generalized_digit_case(self):
        # even base, a = b/2 - 1, c = b puts the middle digit at b itself
        report = kernel_eq2_check(64)
        assert report.all_hold


class TestTailInequality:
    def test_positive_at_50(self):
        report = tail_inequality_check(50)
        assert report.all_hold
        # reference: 1/50 - 6 log 50 / 2450 - 1/500 = 0.00841953...
        value = tail_inequality_value(50)
        assert abs(mid_fraction(value) - Fraction("0.00841953")) < Fraction(1, 10**6)

    def test_negative_at_10(self):
        assert not tail_inequality_check(10).all_hold
        assert Fraction("-0.104") < mid_fraction(tail_inequality_value(10)) < Fraction("-0.103")

    def test_positive_at_1000(self):
        assert tail_inequality_check(1000).all_hold

    def test_negative_for_all_small_bases(self):
        assert not any(tail_inequality_check(b).all_hold for b in range(2, 11))


class TestLayer3Transfer:
    @pytest.mark.parametrize("b", [50, 51, 100])
    def test_holds(self, b):
        assert layer3_transfer_check(b)

    def test_precondition(self):
        with pytest.raises(ValueError):
            layer3_transfer_check(5)


class TestSandwich:
    def test_examples(self):
        assert sum_integral_sandwich("reciprocal", 1, 9)
        assert sum_integral_sandwich("identity", 0, 4)
        assert sum_integral_sandwich("logarithm", 1, 10)

    def test_negated_variants(self):
        assert sum_integral_sandwich("neg_reciprocal", 2, 500)
        assert sum_integral_sandwich("neg_logarithm", 1, 77)
        assert sum_integral_sandwich("neg_identity", -5, 5)

    def test_catalog_guards(self):
        with pytest.raises(ValueError):
            sum_integral_sandwich("cosine", 1, 10)
        with pytest.raises(ValueError):
            sum_integral_sandwich("reciprocal", 0, 10)
        with pytest.raises(ValueError):
            sum_integral_sandwich("identity", 4, 4)

    def test_catalog_is_complete(self):
        assert set(SANDWICH_CATALOG) == {
            "reciprocal",
            "logarithm",
            "identity",
            "neg_reciprocal",
            "neg_logarithm",
            "neg_identity",
        }

    def test_reciprocal_difference_value(self):
        # reference: H_9 - log 9 = 0.6317436766; the sandwich window is [1/9, 1]
        from palsums.analysis import _catalog_reciprocal

        fa, fb, total, integral = _catalog_reciprocal(1, 9, 128)
        diff = total - integral
        assert abs(mid_fraction(diff) - Fraction("0.6317436766")) < Fraction(1, 10**8)


REFERENCE_TABLE_SPOT = {
    3: ("-0.62050401", "0.18128669", "0.98088799"),
    10: ("-0.02679941", "0.02310516", "0.07300909"),
    20: ("-0.00478989", "0.00792504", "0.02063996"),
}


class TestLogConcavityRows:
    @pytest.mark.parametrize("b", sorted(REFERENCE_TABLE_SPOT))
    def test_spot_rows_match_table(self, b):
        row = log_concavity_row(b)
        tol = Fraction(2, 10**8)
        for enc, printed in zip((row.L, row.M, row.U), REFERENCE_TABLE_SPOT[b]):
            assert abs(mid_fraction(enc) - Fraction(printed)) <= tol

    def test_certified_ordering(self):
        row = log_concavity_row(10)
        assert row.L.lo <= row.U.hi
        assert row.L.strictly_less_than(row.M)
        assert row.M.strictly_less_than(row.U)

    def test_rejects_small_base(self):
        with pytest.raises(ValueError):
            log_concavity_row(2)


class TestScan:
    def test_range_3_to_20(self):
        entries = log_concavity_scan(3, 20)
        assert [e.b for e in entries] == list(range(3, 21))
        assert all(e.m_sign == "positive" for e in entries)
        assert all(e.l_sign == "negative" for e in entries)
        assert all(e.u_sign == "positive" for e in entries)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            log_concavity_scan(2, 20)


class TestAsymptoticMetric:
    def test_small_range(self):
        report = asymptotic_error_metric(2, 50)
        assert report.metric <= 3
        assert report.worst_b == 2
        # reference: |midpoint(2) - 1.69381713| * 2 / log 2 = 2.128...
        assert 2.0 < report.metric < 2.3
        assert report.diffs_all_positive(2, 49)
        assert report.diffs_decreasing(10, 49)

    def test_range_validation(self):
        with pytest.raises(ValueError):
            asymptotic_error_metric(1, 10)
