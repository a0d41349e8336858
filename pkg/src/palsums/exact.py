"""Exact rational sums: harmonic prefixes, per-length layer sums, partial sums.

All results are `fractions.Fraction` in lowest terms.  Accumulation happens
on gmpy2 rationals grouped by leading digit, with balanced pairwise
reduction inside each group; exact arithmetic makes the result independent
of summation order, so the grouping is purely a cost and clarity choice.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .digits import check_base, count_palindromes, free_coefficients

DEFAULT_TERM_BUDGET = 20_000_000


class TermBudgetError(ValueError):
    """Raised when a sum would require more reciprocal terms than allowed."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"sum requires {required} terms but the term budget is {budget}; "
            f"raise the budget or use the enclosure path"
        )


@dataclass(frozen=True)
class LayerSumRecord:
    """Exact reciprocal sum over all k-digit base-b palindromes."""

    base: int
    k: int
    value: Fraction
    term_count: int


def _balanced_sum(items: list) -> mpq:
    """Pairwise tree reduction; keeps intermediate denominators small."""
    if not items:
        return mpq(0)
    while len(items) > 1:
        merged = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            merged.append(items[-1])
        items = merged
    return items[0]


def _to_fraction(q: mpq) -> Fraction:
    return Fraction(int(q.numerator), int(q.denominator))


def harmonic_x(b: int) -> Fraction:
    """Sum of 1/a for a in [1, b-1]."""
    check_base(b)
    return _to_fraction(_balanced_sum([mpq(1, a) for a in range(1, b)]))


def harmonic_y(b: int) -> Fraction:
    """Sum of 1/a for a in [2, b]."""
    check_base(b)
    return _to_fraction(_balanced_sum([mpq(1, a) for a in range(2, b + 1)]))


def _leading_digit_group(b: int, k: int, a: int) -> mpq:
    """Exact reciprocal sum of the k-digit palindromes with leading digit a."""
    coeffs = free_coefficients(b, k)
    head = a * coeffs[0]
    interior = coeffs[1:]
    if not interior:
        return mpq(1, head)
    values = [head]
    for c in interior:
        values = [v + u * c for v in values for u in range(b)]
    return _balanced_sum([mpq(1, n) for n in values])


def layer_sum_exact(b: int, k: int, *, term_budget: int = DEFAULT_TERM_BUDGET) -> LayerSumRecord:
    """Exact reciprocal sum over all k-digit base-b palindromes."""
    count = count_palindromes(b, k)
    if count > term_budget:
        raise TermBudgetError(count, term_budget)
    total = _balanced_sum([_leading_digit_group(b, k, a) for a in range(1, b)])
    return LayerSumRecord(base=b, k=k, value=_to_fraction(total), term_count=count)


def partial_sum_exact(b: int, K: int, *, term_budget: int = DEFAULT_TERM_BUDGET) -> Fraction:
    """Exact reciprocal sum of base-b palindromes with at most K digits."""
    check_base(b)
    if not isinstance(K, int) or K < 1:
        raise ValueError(f"digit length bound must be >= 1, got {K!r}")
    required = sum(count_palindromes(b, k) for k in range(1, K + 1))
    if required > term_budget:
        raise TermBudgetError(required, term_budget)
    layers = [layer_sum_exact(b, k, term_budget=term_budget) for k in range(1, K + 1)]
    return _to_fraction(_balanced_sum([mpq(rec.value) for rec in layers]))
