"""Interval arithmetic tests: every operation must contain the exact
rational result, endpoints must be directed, and decimal rendering must
never cross the true value."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from palsums.enclosure import (
    Enclosure,
    euler_gamma,
    format_directed,
    log_exact,
)

# 70 verified decimals of Euler's constant, for the containment test
GAMMA_70 = Fraction(
    5772156649015328606065120900824024310421593359399235988057672348848677,
    10**70,
)

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=10**6
)


class TestConstruction:
    def test_from_exact_brackets(self):
        e = Enclosure.from_exact(Fraction(1, 3))
        assert e.lo < Fraction(1, 3) < e.hi
        assert float(e.width()) < 1e-37

    def test_exact_values_are_points(self):
        e = Enclosure.from_exact(7)
        assert e.lo == e.hi == 7

    def test_inverted_rejected(self):
        a = Enclosure.from_exact(2)
        with pytest.raises(ValueError):
            Enclosure(a.hi, -a.lo, a.precision_bits)

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            Enclosure.from_exact(0.5)


class TestArithmetic:
    @given(rationals, rationals)
    @settings(max_examples=200)
    def test_add_sub_mul_contain_exact(self, p, q):
        ep, eq = Enclosure.from_exact(p), Enclosure.from_exact(q)
        assert (ep + eq).contains(p + q)
        assert (ep - eq).contains(p - q)
        assert (ep * eq).contains(p * q)

    @given(rationals, rationals.filter(lambda q: abs(q) > Fraction(1, 100)))
    @settings(max_examples=200)
    def test_div_contains_exact(self, p, q):
        assert (Enclosure.from_exact(p) / Enclosure.from_exact(q)).contains(p / q)

    def test_div_by_zero_straddle(self):
        span = Enclosure.from_exact(-1) + Enclosure.from_exact(2) * Enclosure.from_exact(
            Fraction(1, 2)
        )  # enclosure of 0, width ~ulp
        with pytest.raises(ZeroDivisionError):
            Enclosure.from_exact(1) / span

    @given(rationals)
    @settings(max_examples=200)
    def test_square_contains_and_nonneg(self, p):
        sq = Enclosure.from_exact(p).square()
        assert sq.contains(p * p)
        assert sq.lo >= 0

    def test_scalar_mixing(self):
        e = Enclosure.from_exact(Fraction(3, 7))
        assert (e + 1).contains(Fraction(10, 7))
        assert (2 - e).contains(Fraction(11, 7))
        assert (e * Fraction(7, 3)).contains(1)
        assert (1 / e).contains(Fraction(7, 3))

    def test_sqrt_perfect_square_is_point(self):
        r = Enclosure.from_exact(49).sqrt()
        assert r.lo == r.hi == 7

    def test_sqrt_contains(self):
        r = Enclosure.from_exact(2).sqrt()
        assert r.lo < r.hi
        assert (r.square()).contains(2)

    def test_log_monotone_endpoints(self):
        l2 = log_exact(2)
        l3 = log_exact(3)
        assert l2.strictly_less_than(l3)
        # log(8) = 3 log(2) within rounding
        l8 = log_exact(8)
        three_l2 = l2 * 3
        assert l8.lo <= three_l2.hi and three_l2.lo <= l8.hi


class TestQueries:
    def test_sign_classification(self):
        assert Enclosure.from_exact(Fraction(1, 10)).sign() == "positive"
        assert Enclosure.from_exact(Fraction(-1, 10)).sign() == "negative"
        straddle = Enclosure.from_exact(1) - Enclosure.from_exact(1)
        assert straddle.sign() == "indeterminate"

    def test_strictly_less(self):
        a = Enclosure.from_exact(1)
        b = Enclosure.from_exact(Fraction(101, 100))
        assert a.strictly_less_than(b)
        assert not b.strictly_less_than(a)


class TestGamma:
    def test_contains_reference_value(self):
        for bits in (64, 128, 256):
            assert euler_gamma(bits).contains(GAMMA_70)

    def test_width_tracks_precision(self):
        assert float(euler_gamma(128).width()) < 1e-37
        # the 60-digit literal caps tightness past ~199 bits
        assert float(euler_gamma(512).width()) < 2e-60


class TestFormatting:
    def test_directed_rounding_directions(self):
        x = Enclosure.from_exact(Fraction(1, 3))
        assert format_directed(x.lo, 7, "down") == "0.3333333"
        assert format_directed(x.hi, 7, "up") == "0.3333334"

    def test_negative_values(self):
        x = Enclosure.from_exact(Fraction(-62050401499, 10**11))
        assert format_directed(x.lo, 8, "down") == "-0.62050402"
        assert format_directed(x.hi, 8, "up") == "-0.62050401"

    def test_nearest(self):
        assert format_directed(Fraction(25, 1000), 2, "nearest") == "0.03"
        assert format_directed(Fraction(24, 1000), 2, "nearest") == "0.02"

    def test_integers_render_fractionally(self):
        assert format_directed(Fraction(8), 3, "down") == "8.000"

    def test_never_crosses_true_value(self):
        v = Fraction(123456789, 9999999)
        e = Enclosure.from_exact(v)
        for digits in (1, 5, 12):
            lo_s = format_directed(e.lo, digits, "down")
            hi_s = format_directed(e.hi, digits, "up")
            assert Fraction(lo_s) <= v <= Fraction(hi_s)

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            format_directed(Fraction(1), 3, "sideways")
