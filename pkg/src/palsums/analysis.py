"""Higher-level verifications built on the bound machinery.

This module certifies, numerically and rigorously, the checkable claims
about the sequence s(b) of reciprocal palindrome sums:

  * strict growth in the base, via separation of consecutive bound pairs;
  * the three integer inequality kernels that the analytic growth argument
    rests on, checked exhaustively over their digit ranges;
  * the positivity of the closing tail expression 1/b - 6 log b/(b(b-1))
    - 5/b^2 for large b;
  * the transfer inequality bounding how much three-digit-and-longer mass
    can drop when the base steps up by one;
  * the sum-vs-integral sandwich for monotone functions from a fixed
    catalog;
  * the log-concavity discriminant table L(b), M(b), U(b) and its sign scan.

Sign decisions are made only on enclosure endpoints: an interval straddling
zero is reported as indeterminate, never as a sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from gmpy2 import mpfr, mpq

from .bounds import (
    BoundParams,
    DEFAULT_CONFIG,
    SumConfig,
    asymptotic_estimate,
    lower_bound,
    upper_bound,
)
from .digits import check_base
from .enclosure import Enclosure, log_exact
from .exact import DEFAULT_TERM_BUDGET, _balanced_sum, harmonic_y, layer_sum_exact

__all__ = [
    "TableRow",
    "KernelReport",
    "ChainPair",
    "MonotoneReport",
    "ScanEntry",
    "AsymptoticReport",
    "bound_pair",
    "verify_monotone_chain",
    "kernel_eq1_check",
    "kernel_eq2_check",
    "kernel_eq3_check",
    "tail_inequality_check",
    "tail_inequality_value",
    "layer3_transfer_check",
    "sum_integral_sandwich",
    "SANDWICH_CATALOG",
    "log_concavity_row",
    "log_concavity_scan",
    "asymptotic_error_metric",
]

_STANDARD_PARAMS = BoundParams(5, 5)


@dataclass(frozen=True)
class TableRow:
    """One row of the log-concavity discriminant table."""

    b: int
    L: Enclosure
    M: Enclosure
    U: Enclosure


@dataclass(frozen=True)
class KernelReport:
    """Outcome of one exhaustive kernel check at base b."""

    b: int
    kernel_id: str
    all_hold: bool
    counterexample: Optional[tuple[int, int]]


@dataclass(frozen=True)
class ChainPair:
    b: int
    upper_hi: mpfr
    next_lower_lo: mpfr
    separated: bool


@dataclass(frozen=True)
class MonotoneReport:
    b_max: int
    ok: bool
    pairs: tuple[ChainPair, ...]


@dataclass(frozen=True)
class ScanEntry:
    b: int
    row: TableRow
    m_sign: str
    l_sign: str
    u_sign: str


@dataclass(frozen=True)
class AsymptoticReport:
    """Desk-scale diagnostics for how the bound midpoints track
    (b+2)/(b+1) (log b + gamma)."""

    metric: float
    worst_b: int
    diffs: tuple[tuple[int, float], ...]

    def diffs_all_positive(self, lo: int, hi: int) -> bool:
        return all(d > 0 for b, d in self.diffs if lo <= b <= hi)

    def diffs_decreasing(self, lo: int, hi: int) -> bool:
        window = [d for b, d in self.diffs if lo <= b <= hi]
        return all(x > y for x, y in zip(window, window[1:]))


@lru_cache(maxsize=None)
def _bound_pair_cached(b: int, config: SumConfig) -> tuple[Enclosure, Enclosure]:
    return (
        upper_bound(b, _STANDARD_PARAMS, config),
        lower_bound(b, _STANDARD_PARAMS, config),
    )


def bound_pair(b: int, config: SumConfig = DEFAULT_CONFIG) -> tuple[Enclosure, Enclosure]:
    """The (upper, lower) bound enclosures at the standard parameters
    (ell, m) = (5, 5), cached per base."""
    check_base(b)
    return _bound_pair_cached(b, config)


def verify_monotone_chain(b_max: int, config: SumConfig = DEFAULT_CONFIG) -> MonotoneReport:
    """Certify s(b) < s(b') for all 2 <= b < b' <= b_max.

    Only consecutive pairs are checked: upper(b).hi < lower(b+1).lo implies
    the whole chain by transitivity.  Vacuously true for b_max = 2.
    """
    if b_max < 2:
        raise ValueError(f"chain needs b_max >= 2, got {b_max!r}")
    pairs = []
    for b in range(2, b_max):
        alpha, _ = bound_pair(b, config)
        _, beta_next = bound_pair(b + 1, config)
        pairs.append(
            ChainPair(
                b=b,
                upper_hi=alpha.hi,
                next_lower_lo=beta_next.lo,
                separated=alpha.hi < beta_next.lo,
            )
        )
    return MonotoneReport(b_max=b_max, ok=all(p.separated for p in pairs), pairs=tuple(pairs))


# ---------------------------------------------------------------------------
# integer inequality kernels
#
# Each kernel compares the reciprocal of a three-digit palindrome in base
# b+1 against the reciprocal of a matched three-digit palindrome in base b.
# Positivity of the difference reduces to an exact integer denominator
# difference whose closed form is re-verified alongside the sign.
# ---------------------------------------------------------------------------


def _three_digit(hi: int, mid: int, base: int) -> int:
    # generalized positional value; digits may equal the base
    return hi * base * base + mid * base + hi


def kernel_eq1_check(b: int) -> KernelReport:
    """For 1 <= a <= floor(b/2)-1 and 0 <= c <= b-(2a+2):
    1/(a c a)_{b+1} - 1/(a (2a+c+1) a)_b > 0, via denominator difference
    a + c - b < 0."""
    check_base(b)
    if b < 4:
        raise ValueError("kernel ranges are empty for b < 4")
    for a in range(1, b // 2):
        for c in range(0, b - 2 * a - 1):
            d1 = _three_digit(a, c, b + 1)
            d2 = _three_digit(a, 2 * a + c + 1, b)
            if d2 - d1 != b - a - c or d1 >= d2:
                return KernelReport(b, "eq1-kernel", False, (a, c))
    return KernelReport(b, "eq1-kernel", True, None)


def kernel_eq2_check(b: int) -> KernelReport:
    """For 1 <= a <= floor(b/2)-1 and b-(2a+1) <= c <= b:
    1/(a c a)_{b+1} - 1/((a+1) (2a+c+2-b) (a+1))_b > 0, via denominator
    difference a + c - 2b - 1 < 0.  The middle digit 2a+c+2-b may equal b;
    the generalized positional value is used."""
    check_base(b)
    if b < 4:
        raise ValueError("kernel ranges are empty for b < 4")
    for a in range(1, b // 2):
        for c in range(b - 2 * a - 1, b + 1):
            d1 = _three_digit(a, c, b + 1)
            d2 = _three_digit(a + 1, 2 * a + c + 2 - b, b)
            if d2 - d1 != 2 * b + 1 - a - c or d1 >= d2:
                return KernelReport(b, "eq2-kernel", False, (a, c))
    return KernelReport(b, "eq2-kernel", True, None)


def kernel_eq3_check(b: int) -> KernelReport:
    """For floor(b/2) <= a <= b-3 and 0 <= c <= b-1:
    1/(a c a)_{b+1} - 1/((a+2) c (a+2))_b > 0, via denominator difference
    2ab + a + c - 2b^2 - 2 < 0."""
    check_base(b)
    if b < 6:
        raise ValueError("kernel ranges are empty for b < 6")
    for a in range(b // 2, b - 2):
        for c in range(0, b):
            d1 = _three_digit(a, c, b + 1)
            d2 = _three_digit(a + 2, c, b)
            if d2 - d1 != 2 * b * b + 2 - 2 * a * b - a - c or d1 >= d2:
                return KernelReport(b, "eq3-kernel", False, (a, c))
    return KernelReport(b, "eq3-kernel", True, None)


def tail_inequality_value(b: int, config: SumConfig = DEFAULT_CONFIG) -> Enclosure:
    """Enclosure of 1/b - 6 log b / (b(b-1)) - 5/b^2."""
    check_base(b)
    prec = config.precision_bits
    log_term = log_exact(b, prec) * mpq(6, b * (b - 1))
    return Enclosure.from_exact(mpq(1, b), prec) - log_term - Enclosure.from_exact(
        mpq(5, b * b), prec
    )


def tail_inequality_check(b: int, config: SumConfig = DEFAULT_CONFIG) -> KernelReport:
    """Certify 1/b - 6 log b/(b(b-1)) - 5/b^2 > 0 (holds from b = 50 on;
    deliberately false for small b)."""
    value = tail_inequality_value(b, config)
    return KernelReport(b, "tail-ineq", value.is_strictly_positive(), None)


def layer3_transfer_check(b: int, *, term_budget: int = DEFAULT_TERM_BUDGET) -> bool:
    """Check s(b+1, 3) + 2 y(b+1)/(b(b+1)) - s(b, 3) > -5/b^2 exactly.

    The middle term is a proven lower bound for the four-digit-and-longer
    mass in base b+1, so this finite rational inequality certifies that
    stepping the base up cannot drop the three-digit-and-longer mass by
    more than 5/b^2.
    """
    check_base(b)
    if b < 6:
        raise ValueError(f"transfer check needs b >= 6, got {b}")
    s3 = layer_sum_exact(b, 3, term_budget=term_budget).value
    s3_next = layer_sum_exact(b + 1, 3, term_budget=term_budget).value
    tail_low = 2 * harmonic_y(b + 1) / (b * (b + 1))
    return s3_next + tail_low - s3 > Fraction(-5, b * b)


# ---------------------------------------------------------------------------
# sum-vs-integral sandwich for monotone catalog functions
# ---------------------------------------------------------------------------


def _catalog_reciprocal(a: int, b: int, prec: int):
    total = Enclosure.from_exact(_balanced_sum([mpq(1, n) for n in range(a, b + 1)]), prec)
    integral = log_exact(mpq(b, a), prec)
    fa = Enclosure.from_exact(mpq(1, a), prec)
    fb = Enclosure.from_exact(mpq(1, b), prec)
    return fa, fb, total, integral


def _log_point(n: int, prec: int) -> Enclosure:
    if n == 1:
        return Enclosure.from_exact(0, prec)
    return log_exact(n, prec)


def _catalog_logarithm(a: int, b: int, prec: int):
    # sum of log n over [a, b] is the log of one exact factorial ratio
    total = log_exact(mpq(math.factorial(b), math.factorial(a - 1)), prec)
    phi_b = _log_point(b, prec) * b - b
    phi_a = _log_point(a, prec) * a - a
    return _log_point(a, prec), _log_point(b, prec), total, phi_b - phi_a


def _catalog_identity(a: int, b: int, prec: int):
    total = Enclosure.from_exact(mpq((a + b) * (b - a + 1), 2), prec)
    integral = Enclosure.from_exact(mpq(b * b - a * a, 2), prec)
    return (
        Enclosure.from_exact(a, prec),
        Enclosure.from_exact(b, prec),
        total,
        integral,
    )


def _negate(entry: Callable):
    def negated(a: int, b: int, prec: int):
        fa, fb, total, integral = entry(a, b, prec)
        return -fa, -fb, -total, -integral

    return negated


# name -> (evaluator, smallest admissible left endpoint)
SANDWICH_CATALOG: dict[str, tuple[Callable, int]] = {
    "reciprocal": (_catalog_reciprocal, 1),
    "logarithm": (_catalog_logarithm, 1),
    "identity": (_catalog_identity, None),
    "neg_reciprocal": (_negate(_catalog_reciprocal), 1),
    "neg_logarithm": (_negate(_catalog_logarithm), 1),
    "neg_identity": (_negate(_catalog_identity), None),
}


def sum_integral_sandwich(
    name: str, a: int, b: int, config: SumConfig = DEFAULT_CONFIG
) -> bool:
    """Certify min(f(a), f(b)) <= sum_{n=a}^{b} f(n) - integral_a^b f
    <= max(f(a), f(b)) for a catalog function f, monotone on [a, b].

    Integrals use closed-form antiderivatives, so the only slack is
    directed rounding.  Certification compares enclosure endpoints: the
    lower bound holds if min of the endpoint .hi values sits below the
    difference's .lo, symmetrically for the upper bound.
    """
    try:
        evaluator, min_left = SANDWICH_CATALOG[name]
    except KeyError:
        raise ValueError(f"unknown catalog function {name!r}") from None
    if a >= b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    if min_left is not None and a < min_left:
        raise ValueError(f"{name} requires a >= {min_left}, got {a}")
    fa, fb, total, integral = evaluator(a, b, config.precision_bits)
    diff = total - integral
    return min(fa.hi, fb.hi) <= diff.lo and diff.hi <= max(fa.lo, fb.lo)


# ---------------------------------------------------------------------------
# log-concavity discriminant
# ---------------------------------------------------------------------------


def log_concavity_row(b: int, config: SumConfig = DEFAULT_CONFIG) -> TableRow:
    """Enclosures of L(b), M(b), U(b) where, writing (alpha, beta) for the
    upper/lower bound pair at each base,

        L(b) = beta(b)^2 - alpha(b-1) alpha(b+1)   (certified lower)
        M(b) = mid(b)^2 - mid(b-1) mid(b+1)        (midpoint estimate)
        U(b) = alpha(b)^2 - beta(b-1) beta(b+1)    (certified upper)

    bracket the log-concavity discriminant s(b)^2 - s(b-1) s(b+1).
    """
    if b < 3:
        raise ValueError(f"discriminant row needs b >= 3, got {b!r}")
    alpha_prev, beta_prev = bound_pair(b - 1, config)
    alpha, beta = bound_pair(b, config)
    alpha_next, beta_next = bound_pair(b + 1, config)
    mid_prev = (alpha_prev + beta_prev) / 2
    mid = (alpha + beta) / 2
    mid_next = (alpha_next + beta_next) / 2
    return TableRow(
        b=b,
        L=beta.square() - alpha_prev * alpha_next,
        M=mid.square() - mid_prev * mid_next,
        U=alpha.square() - beta_prev * beta_next,
    )


def log_concavity_scan(
    b_min: int, b_max: int, config: SumConfig = DEFAULT_CONFIG
) -> list[ScanEntry]:
    """Sign-scan M(b) (and report L, U signs) over [b_min, b_max]."""
    if not 3 <= b_min <= b_max:
        raise ValueError(f"need 3 <= b_min <= b_max, got [{b_min}, {b_max}]")
    entries = []
    for b in range(b_min, b_max + 1):
        row = log_concavity_row(b, config)
        entries.append(
            ScanEntry(
                b=b,
                row=row,
                m_sign=row.M.sign(),
                l_sign=row.L.sign(),
                u_sign=row.U.sign(),
            )
        )
    return entries


def asymptotic_error_metric(
    b_min: int, b_max: int, config: SumConfig = DEFAULT_CONFIG
) -> AsymptoticReport:
    """Max over [b_min, b_max] of |midpoint - estimate| * b / log b, where
    midpoint averages the bound pair and the estimate is
    (b+2)/(b+1) (log b + gamma); plus consecutive midpoint differences.

    This is a desk-scale diagnostic (float precision suffices): the scaled
    deviation staying small exhibits the O(log b / b) tracking, and the
    differences exhibit strict growth with vanishing increments.
    """
    if not 2 <= b_min <= b_max:
        raise ValueError(f"need 2 <= b_min <= b_max, got [{b_min}, {b_max}]")
    metric = -1.0
    worst_b = b_min
    mids: dict[int, float] = {}
    for b in range(b_min, b_max + 1):
        alpha, beta = bound_pair(b, config)
        mid = float(((alpha + beta) / 2).midpoint())
        mids[b] = mid
        est = float(asymptotic_estimate(b, config).midpoint())
        dev = abs(mid - est) * b / math.log(b)
        if dev > metric:
            metric, worst_b = dev, b
    diffs = tuple((b, mids[b + 1] - mids[b]) for b in range(b_min, b_max))
    return AsymptoticReport(metric=metric, worst_b=worst_b, diffs=diffs)
