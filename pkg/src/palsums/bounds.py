"""Rigorous lower/upper bounds for the reciprocal palindrome sum.

For base b let s(b, k) be the reciprocal sum of the k-digit base-b
palindromes and s(b) the full series.  With the harmonic prefixes
x = sum_{a=1}^{b-1} 1/a and y = sum_{a=2}^{b} 1/a, the two-sided bound
computed here is, for parameters ell >= 3 and m >= 2 and c = ceil(ell/2):

    s(b) >= (b+2)/(b+1) x + 2y / (b^c - b^(c-1)) + sum_{k=3}^{2c-1} s(b, k)
    s(b) <= ((b+2)/(b+1) + 2/(b^m - b^(m-1))
             + sum_{k=ell}^{2m-1} b^ceil((k-2)/2) / (b^(k-1) + 1)) x
            + sum_{k=3}^{ell-1} s(b, k)

Every quantity is produced as an `Enclosure`, so `.lo` of the first
expression is a certified lower bound for s(b) and `.hi` of the second a
certified upper bound.

Layer sums s(b, k) feeding the bounds are enclosed by one of three
strategies, picked by term count:

  * exact: rational summation, outward-rounded once (tightest);
  * direct: term-by-term directed-rounded accumulation;
  * bracket: exact enumeration of the outer free digits, with the sum over
    the innermost digit (or two innermost digits) replaced by a rigorous
    integral bracket; see `_recip_linear_sum` for the inequality used.

The bracket widths decay like 1/b^3 or faster per layer, while every
certified margin downstream (chain separation, table accuracy, scan
positivity) is orders of magnitude larger; the default thresholds keep the
exact/direct paths in force wherever 8-decimal table accuracy is needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpfr, mpq

from .digits import check_base, count_palindromes, enumerate_palindromes, free_coefficients
from .enclosure import (
    DEFAULT_PRECISION,
    Enclosure,
    _contexts,
    euler_gamma,
    log_exact,
)
from .exact import DEFAULT_TERM_BUDGET, TermBudgetError, layer_sum_exact

__all__ = [
    "BoundParams",
    "SumConfig",
    "DEFAULT_CONFIG",
    "layer_sum_enclosure",
    "layer_envelope",
    "lower_bound",
    "upper_bound",
    "simple_bounds",
    "crude_upper",
    "tail_geometric",
    "geometric_tail_partial",
    "asymptotic_estimate",
    "upper_kernel_sum",
]


@dataclass(frozen=True)
class BoundParams:
    """Tail-splitting parameters (ell, m) of the two-sided bound."""

    ell: int = 5
    m: int = 5

    def __post_init__(self) -> None:
        if not isinstance(self.ell, int) or self.ell < 3:
            raise ValueError(f"ell must be an integer >= 3, got {self.ell!r}")
        if not isinstance(self.m, int) or self.m < 2:
            raise ValueError(f"m must be an integer >= 2, got {self.m!r}")


@dataclass(frozen=True)
class SumConfig:
    """Precision and effort settings for enclosure computations."""

    precision_bits: int = DEFAULT_PRECISION
    term_budget: int = DEFAULT_TERM_BUDGET
    exact_layer_terms: int = 5_000
    direct_layer_terms: int = 20_000


DEFAULT_CONFIG = SumConfig()


# ---------------------------------------------------------------------------
# harmonic prefixes as exact rationals (cached; used by every bound)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _harmonic_x_q(b: int) -> mpq:
    acc = mpq(0)
    for a in range(1, b):
        acc += mpq(1, a)
    return acc


def _harmonic_y_q(b: int) -> mpq:
    return _harmonic_x_q(b) - 1 + mpq(1, b)


# ---------------------------------------------------------------------------
# layer sum enclosures
# ---------------------------------------------------------------------------


def _recip_linear_sum(N: int, q: int, D: int, precision_bits: int) -> Enclosure:
    """Enclose sum_{d=0}^{D-1} 1/(N + q d) without touching every term.

    f(t) = 1/(N + q t) is positive, decreasing and convex for t >= -1/2
    (requires 2N > q).  The midpoint rule underestimates the integral of a
    convex function on each unit cell, f(d) <= integral over
    [d-1/2, d+1/2], hence

        S <= I := integral_{-1/2}^{D-1/2} f
                = (1/q) log((2N + q(2D-1)) / (2N - q)).

    The per-cell defect is f''(xi)/24 with f'' positive and decreasing, so
    summing the cells telescopes into

        I - S <= (1/24) (f''(-1/2) - f'(-1/2)) =: E,

    with u = N - q/2, f'(-1/2) = -q/u^2 and f''(-1/2) = 2 q^2/u^3; E is an
    exact rational.  The returned interval is [I.lo - E(up), I.hi].
    """
    if 2 * N <= q:
        raise ValueError("bracket needs 2N > q")
    ratio = mpq(2 * N + q * (2 * D - 1), 2 * N - q)
    integral = log_exact(ratio, precision_bits) / q
    u = mpq(2 * N - q, 2)
    excess = (2 * q * q / (u * u * u) + q / (u * u)) / 24
    lower = (integral - Enclosure.from_exact(excess, precision_bits)).lo
    return Enclosure(lower, integral.hi, precision_bits)


def _log_antiderivative(u: mpq, precision_bits: int) -> Enclosure:
    """phi(u) = u log u - u for an exact u > 0."""
    return log_exact(u, precision_bits) * u - Enclosure.from_exact(u, precision_bits)


def _log_integral(A: mpq, B: int, t0: mpq, t1: mpq, precision_bits: int) -> Enclosure:
    """Enclose integral_{t0}^{t1} log(A + B t) dt via phi(u) = u log u - u."""
    u0, u1 = A + B * t0, A + B * t1
    return (
        _log_antiderivative(u1, precision_bits) - _log_antiderivative(u0, precision_bits)
    ) / B


def _recip_bilinear_sum(
    N0: int, B: int, Dc: int, q: int, Dd: int, precision_bits: int
) -> Enclosure:
    """Enclose sum_{c=0}^{Dc-1} sum_{d=0}^{Dd-1} 1/(N0 + B c + q d).

    The inner sums over d are bracketed as in `_recip_linear_sum` by

        I(c) = (1/q) log((N(c) + q Dd - q/2) / (N(c) - q/2)),  N(c) = N0 + B c,

    with inner defect at most E_d(c) = (1/24)(2 q^2/u^3 + q/u^2) at
    u = N(c) - q/2.  I is itself positive, decreasing and convex in c (its
    first two derivatives have the closed forms used below), so the same
    midpoint argument brackets the outer sum, the integral of I having the
    elementary antiderivative phi(u) = u log u - u on both log arguments.
    E_d decreases in c, so its total over the outer range is at most
    Dc * E_d(0).  Requires 2 N0 > B + q.
    """
    if 2 * N0 <= B + q:
        raise ValueError("bracket needs 2 N0 > B + q")
    half = mpq(1, 2)
    hi_shift = mpq(q * (2 * Dd - 1), 2)  # q Dd - q/2
    lo_shift = -mpq(q, 2)
    integral = (
        _log_integral(N0 + hi_shift, B, -half, Dc - half, precision_bits)
        - _log_integral(N0 + lo_shift, B, -half, Dc - half, precision_bits)
    ) / q

    # outer midpoint defect at c = -1/2, exact rationals
    nm = N0 - mpq(B, 2)
    v1 = nm + hi_shift
    v2 = nm + lo_shift
    neg_slope = mpq(B, q) * (1 / v2 - 1 / v1)
    curvature = mpq(B * B, q) * (1 / (v2 * v2) - 1 / (v1 * v1))
    outer_excess = (curvature + neg_slope) / 24

    # inner defects, summed over the outer range
    u0 = N0 + lo_shift
    inner_excess = Dc * (2 * q * q / (u0 * u0 * u0) + q / (u0 * u0)) / 24

    correction = Enclosure.from_exact(outer_excess + inner_excess, precision_bits)
    lower = (integral - correction).lo
    return Enclosure(lower, integral.hi, precision_bits)


def _layer_bracket(b: int, k: int, config: SumConfig) -> Enclosure:
    """Bracket strategy: enumerate outer free digits, bracket the rest."""
    coeffs = free_coefficients(b, k)
    lead, interior = coeffs[0], coeffs[1:]
    prec = config.precision_bits
    total = Enclosure.from_exact(0, prec)
    if len(interior) == 1:
        q = interior[0]
        for a in range(1, b):
            total = total + _recip_linear_sum(a * lead, q, b, prec)
        return total
    outer, B, q = interior[:-2], interior[-2], interior[-1]
    groups = (b - 1) * b ** len(outer)
    if groups > config.term_budget:
        raise TermBudgetError(groups, config.term_budget)
    heads = [0]
    for c in outer:
        heads = [h + u * c for h in heads for u in range(b)]
    for a in range(1, b):
        base = a * lead
        for h in heads:
            total = total + _recip_bilinear_sum(base + h, B, b, q, b, prec)
    return total


def _layer_direct(b: int, k: int, precision_bits: int) -> Enclosure:
    """Directed-rounded term-by-term accumulation (canonical order)."""
    down, up = _contexts(precision_bits)
    lo = mpfr(0)
    hi = mpfr(0)
    one = mpfr(1)
    for n in enumerate_palindromes(b, k):
        lo = down.add(lo, down.div(one, n))
        hi = up.add(hi, up.div(one, n))
    return Enclosure(lo, hi, precision_bits)


@lru_cache(maxsize=None)
def _layer_cached(b: int, k: int, config: SumConfig) -> Enclosure:
    count = count_palindromes(b, k)
    if count <= config.exact_layer_terms:
        rec = layer_sum_exact(b, k, term_budget=config.term_budget)
        return Enclosure.from_exact(rec.value, config.precision_bits)
    if count <= config.direct_layer_terms or k <= 2:
        if count > config.term_budget:
            raise TermBudgetError(count, config.term_budget)
        return _layer_direct(b, k, config.precision_bits)
    return _layer_bracket(b, k, config)


def layer_sum_enclosure(b: int, k: int, config: SumConfig = DEFAULT_CONFIG) -> Enclosure:
    """Enclosure of the reciprocal sum over k-digit base-b palindromes."""
    check_base(b)
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"digit length must be >= 1, got {k!r}")
    return _layer_cached(b, k, config)


def layer_envelope(b: int, k: int) -> tuple[Fraction, Fraction]:
    """Closed-form envelope for one layer: for k >= 3 its sum lies strictly
    between y / b^floor(k/2) and x * b^ceil((k-2)/2) / (b^(k-1) + 1)."""
    check_base(b)
    xq = _harmonic_x_q(b)
    x = Fraction(int(xq.numerator), int(xq.denominator))
    y = x - 1 + Fraction(1, b)
    lower = y / b ** (k // 2)
    upper = x * b ** ((k - 1) // 2) / (b ** (k - 1) + 1)
    return lower, upper


# ---------------------------------------------------------------------------
# the two-sided bound and its relatives
# ---------------------------------------------------------------------------


def _upper_kernel_q(b: int, ell: int, m: int) -> mpq:
    acc = mpq(0)
    for k in range(ell, 2 * m):
        acc += mpq(b ** ((k - 1) // 2), b ** (k - 1) + 1)
    return acc


def upper_kernel_sum(b: int, ell: int, m: int) -> Fraction:
    """Exact sum_{k=ell}^{2m-1} b^ceil((k-2)/2) / (b^(k-1) + 1); empty
    ranges give zero."""
    check_base(b)
    q = _upper_kernel_q(b, ell, m)
    return Fraction(int(q.numerator), int(q.denominator))


def lower_bound(
    b: int, params: BoundParams = BoundParams(), config: SumConfig = DEFAULT_CONFIG
) -> Enclosure:
    """Enclosure of the lower-bound expression; its .lo certifies s(b)."""
    check_base(b)
    c = (params.ell + 1) // 2
    rational = (b + 2) * _harmonic_x_q(b) / (b + 1) + 2 * _harmonic_y_q(b) / (
        b**c - b ** (c - 1)
    )
    total = Enclosure.from_exact(rational, config.precision_bits)
    for k in range(3, 2 * c):
        total = total + layer_sum_enclosure(b, k, config)
    return total


def upper_bound(
    b: int, params: BoundParams = BoundParams(), config: SumConfig = DEFAULT_CONFIG
) -> Enclosure:
    """Enclosure of the upper-bound expression; its .hi certifies s(b)."""
    check_base(b)
    ell, m = params.ell, params.m
    factor = mpq(b + 2, b + 1) + mpq(2, b**m - b ** (m - 1)) + _upper_kernel_q(b, ell, m)
    total = Enclosure.from_exact(factor * _harmonic_x_q(b), config.precision_bits)
    for k in range(3, ell):
        total = total + layer_sum_enclosure(b, k, config)
    return total


def simple_bounds(
    b: int, config: SumConfig = DEFAULT_CONFIG
) -> tuple[Enclosure, Enclosure]:
    """The simple closed-form bound pair (no layer sums):

        (b+2)/(b+1) x + 2y/(b(b-1)) <= s(b)
        s(b) <= ((b+2)/(b+1) + 2/(b(b-1)) + b/(b^2+1)) x

    The upper side equals upper_bound at (ell, m) = (3, 2); the lower side
    drops the (positive) three-digit layer that lower_bound keeps, so it is
    weaker but needs no layer sum at all.
    """
    check_base(b)
    x = _harmonic_x_q(b)
    y = _harmonic_y_q(b)
    lower = (b + 2) * x / (b + 1) + 2 * y / (b * (b - 1))
    upper = (mpq(b + 2, b + 1) + mpq(2, b * (b - 1)) + mpq(b, b * b + 1)) * x
    return (
        Enclosure.from_exact(lower, config.precision_bits),
        Enclosure.from_exact(upper, config.precision_bits),
    )


def crude_upper(b: int, config: SumConfig = DEFAULT_CONFIG) -> Enclosure:
    """The coarse convergence bound b^(3/2) / (sqrt(b) - 1)."""
    check_base(b)
    eb = Enclosure.from_exact(b, config.precision_bits)
    root = eb.sqrt()
    return (eb * root) / (root - 1)


def tail_geometric(b: int, m: int, config: SumConfig = DEFAULT_CONFIG) -> Enclosure:
    """Closed form of sum_{k=2m}^inf b^ceil((k-2)/2) / b^(k-1)
    = 2 / ((b-1) b^(m-1))."""
    check_base(b)
    if not isinstance(m, int) or m < 2:
        raise ValueError(f"m must be an integer >= 2, got {m!r}")
    return Enclosure.from_exact(mpq(2, (b - 1) * b ** (m - 1)), config.precision_bits)


def geometric_tail_partial(b: int, m: int, terms: int) -> tuple[Fraction, Fraction]:
    """Exact partial sum_{k=2m}^{2m+terms} b^ceil((k-2)/2)/b^(k-1) and an
    exact bound on the dropped remainder (the two add up to the closed
    form, so the remainder bound is tight)."""
    check_base(b)
    acc = mpq(0)
    for k in range(2 * m, 2 * m + terms + 1):
        acc += mpq(1, b ** (k // 2))
    start = 2 * m + terms + 1
    t = start // 2
    rem = mpq(2, (b - 1) * b ** (t - 1))
    if start % 2:
        rem -= mpq(1, b**t)
    return (
        Fraction(int(acc.numerator), int(acc.denominator)),
        Fraction(int(rem.numerator), int(rem.denominator)),
    )


def asymptotic_estimate(b: int, config: SumConfig = DEFAULT_CONFIG) -> Enclosure:
    """Enclosure of (b+2)/(b+1) (log b + gamma), the growth-rate estimate
    that the bound midpoints track to within O(log b / b)."""
    check_base(b)
    prec = config.precision_bits
    factor = Enclosure.from_exact(mpq(b + 2, b + 1), prec)
    return factor * (log_exact(b, prec) + euler_gamma(prec))
