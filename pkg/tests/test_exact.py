"""Exact rational sum tests.

Expected fractions were computed with a term-by-term Fraction oracle over
the brute-force palindrome lists (see test_digits for the oracle) and are
frozen here.
"""

from fractions import Fraction

import pytest

from palsums.digits import enumerate_palindromes
from palsums.exact import (
    TermBudgetError,
    harmonic_x,
    harmonic_y,
    layer_sum_exact,
    partial_sum_exact,
)


def oracle_layer(b: int, k: int) -> Fraction:
    total = Fraction(0)
    lo, hi = b ** (k - 1), b**k
    for n in range(lo, hi):
        s = []
        m = n
        while m:
            s.append(m % b)
            m //= b
        if s == s[::-1]:
            total += Fraction(1, n)
    return total


class TestHarmonic:
    def test_examples(self):
        assert harmonic_x(2) == 1
        assert harmonic_x(10) == Fraction(7129, 2520)
        assert harmonic_x(3) == Fraction(3, 2)
        assert harmonic_y(2) == Fraction(1, 2)
        assert harmonic_y(10) == Fraction(4861, 2520)

    @pytest.mark.parametrize("b", range(2, 65))
    def test_prefix_offset_identity(self, b):
        assert harmonic_x(b) - harmonic_y(b) == 1 - Fraction(1, b)


class TestLayerSum:
    def test_examples(self):
        assert layer_sum_exact(10, 1).value == Fraction(7129, 2520)
        assert layer_sum_exact(2, 3).value == Fraction(12, 35)
        assert layer_sum_exact(10, 2).value == Fraction(7129, 27720)

    def test_record_fields(self):
        rec = layer_sum_exact(3, 4)
        assert rec.base == 3 and rec.k == 4
        assert rec.term_count == 6
        assert rec.value > 0

    @pytest.mark.parametrize("b,k", [(2, 6), (3, 4), (5, 3), (7, 3), (10, 3)])
    def test_matches_range_filter_oracle(self, b, k):
        assert layer_sum_exact(b, k).value == oracle_layer(b, k)

    @pytest.mark.parametrize("b", range(2, 65))
    def test_one_and_two_digit_identities(self, b):
        assert layer_sum_exact(b, 1).value == harmonic_x(b)
        assert layer_sum_exact(b, 2).value == harmonic_x(b) / (b + 1)

    def test_budget_error_names_requirement(self):
        with pytest.raises(TermBudgetError) as exc:
            layer_sum_exact(10, 3, term_budget=10)
        assert exc.value.required == 90
        assert exc.value.budget == 10
        assert "90" in str(exc.value)

    def test_order_independence(self):
        # exact arithmetic: grouped accumulation equals a fully naive sum
        naive = sum(Fraction(1, n) for n in enumerate_palindromes(6, 4))
        assert layer_sum_exact(6, 4).value == naive


class TestPartialSum:
    def test_examples(self):
        assert partial_sum_exact(2, 3) == Fraction(176, 105)
        assert partial_sum_exact(10, 1) == Fraction(7129, 2520)
        assert partial_sum_exact(2, 1) == 1

    def test_matches_brute_force_prefix(self):
        # every palindrome below 2^10, straight off the range filter
        total = Fraction(0)
        for n in range(1, 2**10):
            s = []
            m = n
            while m:
                s.append(m % 2)
                m //= 2
            if s == s[::-1]:
                total += Fraction(1, n)
        assert partial_sum_exact(2, 10) == total

    @pytest.mark.parametrize("b", [2, 5, 12])
    def test_strictly_increasing_in_length(self, b):
        values = [partial_sum_exact(b, K) for K in range(1, 7)]
        assert all(x < y for x, y in zip(values, values[1:]))

    def test_budget_counts_whole_prefix(self):
        with pytest.raises(TermBudgetError):
            partial_sum_exact(10, 9, term_budget=10_000)
