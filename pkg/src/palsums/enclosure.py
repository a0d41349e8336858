"""Directed-rounded interval arithmetic on MPFR floats.

An `Enclosure` is a pair (lo, hi) with lo computed rounding toward -inf and
hi rounding toward +inf, so the true real value of every expression built
from exact inputs is guaranteed to lie inside.  All claims made elsewhere in
this package (bound validity, sign decisions, chain separation) reduce to
comparisons between enclosure endpoints.

gmpy2 context objects carry the rounding mode; every MPFR operation below
goes through an explicit context, never the global one, so evaluation is
pure and safe to run from multiple threads.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

import gmpy2
from gmpy2 import mpfr, mpq

DEFAULT_PRECISION = 128

# Euler's constant, truncated to 60 decimal digits; the true value lies
# strictly between these two literals.
_EULER_LO = "0.577215664901532860606512090082402431042159335939923598805767"
_EULER_HI = "0.577215664901532860606512090082402431042159335939923598805768"


@lru_cache(maxsize=None)
def _contexts(precision_bits: int) -> tuple[gmpy2.context, gmpy2.context]:
    if precision_bits < 2:
        raise ValueError(f"precision must be at least 2 bits, got {precision_bits}")
    down = gmpy2.context(precision=precision_bits, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=precision_bits, round=gmpy2.RoundUp)
    return down, up


def _as_exact(value) -> mpq:
    """Coerce an exact scalar (int, Fraction, mpq) to mpq; reject floats."""
    if isinstance(value, (int, mpq)) and not isinstance(value, bool):
        return mpq(value)
    if isinstance(value, (Fraction, Rational)):
        return mpq(value.numerator, value.denominator)
    raise TypeError(f"expected an exact scalar, got {type(value).__name__}")


class Enclosure:
    """Interval [lo, hi] guaranteed to contain a true real value."""

    __slots__ = ("lo", "hi", "precision_bits")

    def __init__(self, lo: mpfr, hi: mpfr, precision_bits: int):
        if not lo <= hi:
            raise ValueError(f"inverted enclosure: lo={lo} > hi={hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "precision_bits", precision_bits)

    def __setattr__(self, name, value):
        raise AttributeError("Enclosure is immutable")

    @staticmethod
    def from_exact(value, precision_bits: int = DEFAULT_PRECISION) -> "Enclosure":
        """Outward-round an exact rational into an enclosure."""
        q = _as_exact(value)
        down, up = _contexts(precision_bits)
        return Enclosure(down.add(mpfr(0), q), up.add(mpfr(0), q), precision_bits)

    @staticmethod
    def hull(*values: "Enclosure") -> "Enclosure":
        lo = min(v.lo for v in values)
        hi = max(v.hi for v in values)
        return Enclosure(lo, hi, values[0].precision_bits)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return other
        return Enclosure.from_exact(other, self.precision_bits)

    def __add__(self, other) -> "Enclosure":
        o = self._coerce(other)
        down, up = _contexts(self.precision_bits)
        return Enclosure(down.add(self.lo, o.lo), up.add(self.hi, o.hi), self.precision_bits)

    __radd__ = __add__

    def __neg__(self) -> "Enclosure":
        return Enclosure(-self.hi, -self.lo, self.precision_bits)

    def __sub__(self, other) -> "Enclosure":
        o = self._coerce(other)
        down, up = _contexts(self.precision_bits)
        return Enclosure(down.sub(self.lo, o.hi), up.sub(self.hi, o.lo), self.precision_bits)

    def __rsub__(self, other) -> "Enclosure":
        return self._coerce(other).__sub__(self)

    def __mul__(self, other) -> "Enclosure":
        o = self._coerce(other)
        down, up = _contexts(self.precision_bits)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = min(down.mul(x, y) for x, y in pairs)
        hi = max(up.mul(x, y) for x, y in pairs)
        return Enclosure(lo, hi, self.precision_bits)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("divisor enclosure contains zero")
        down, up = _contexts(self.precision_bits)
        pairs = [(self.lo, o.lo), (self.lo, o.hi), (self.hi, o.lo), (self.hi, o.hi)]
        lo = min(down.div(x, y) for x, y in pairs)
        hi = max(up.div(x, y) for x, y in pairs)
        return Enclosure(lo, hi, self.precision_bits)

    def __rtruediv__(self, other) -> "Enclosure":
        return self._coerce(other).__truediv__(self)

    def square(self) -> "Enclosure":
        """Tight square; unlike self * self it knows both factors agree."""
        down, up = _contexts(self.precision_bits)
        if self.lo >= 0:
            return Enclosure(down.square(self.lo), up.square(self.hi), self.precision_bits)
        if self.hi <= 0:
            return Enclosure(down.square(self.hi), up.square(self.lo), self.precision_bits)
        big = max(-self.lo, self.hi)
        return Enclosure(mpfr(0), up.square(big), self.precision_bits)

    def sqrt(self) -> "Enclosure":
        if self.lo < 0:
            raise ValueError("sqrt of an enclosure reaching below zero")
        down, up = _contexts(self.precision_bits)
        return Enclosure(down.sqrt(self.lo), up.sqrt(self.hi), self.precision_bits)

    def log(self) -> "Enclosure":
        if self.lo <= 0:
            raise ValueError("log of an enclosure reaching zero or below")
        down, up = _contexts(self.precision_bits)
        return Enclosure(down.log(self.lo), up.log(self.hi), self.precision_bits)

    # -- queries ------------------------------------------------------------

    def midpoint(self) -> mpfr:
        down, _ = _contexts(self.precision_bits)
        return down.div(down.add(self.lo, self.hi), 2)

    def width(self) -> mpfr:
        _, up = _contexts(self.precision_bits)
        return up.sub(self.hi, self.lo)

    def contains(self, value) -> bool:
        q = _as_exact(value)
        return self.lo <= q <= self.hi

    def strictly_less_than(self, other: "Enclosure") -> bool:
        return self.hi < other.lo

    def is_strictly_positive(self) -> bool:
        return self.lo > 0

    def is_strictly_negative(self) -> bool:
        return self.hi < 0

    def sign(self) -> str:
        """'positive', 'negative', or 'indeterminate' (straddles zero)."""
        if self.is_strictly_positive():
            return "positive"
        if self.is_strictly_negative():
            return "negative"
        return "indeterminate"

    def __repr__(self) -> str:
        return f"Enclosure({self.lo!r}, {self.hi!r}, bits={self.precision_bits})"


def log_exact(value, precision_bits: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of log(value) for an exact rational value > 0, one rounding
    per endpoint (the mpq argument is converted and logged in one directed
    step each way)."""
    q = _as_exact(value)
    if q <= 0:
        raise ValueError("log requires a positive argument")
    down, up = _contexts(precision_bits)
    return Enclosure(down.log(q), up.log(q), precision_bits)


def euler_gamma(precision_bits: int = DEFAULT_PRECISION) -> Enclosure:
    """Enclosure of Euler's constant from the embedded 60-digit literal.

    Beyond roughly 199 bits the literal, not the working precision, limits
    how tight gamma-dependent results can be.
    """
    scale = 10**60
    lo_q = mpq(int(_EULER_LO.replace("0.", "")), scale)
    hi_q = mpq(int(_EULER_HI.replace("0.", "")), scale)
    down, up = _contexts(precision_bits)
    return Enclosure(down.add(mpfr(0), lo_q), up.add(mpfr(0), hi_q), precision_bits)


def format_directed(x, digits: int, mode: str) -> str:
    """Render x as a decimal string with directed rounding.

    mode 'down' rounds toward -inf, 'up' toward +inf, 'nearest' half-up.
    The conversion is exact (through the integer ratio of x), so printed
    lower bounds stay lower bounds and printed upper bounds stay upper
    bounds.
    """
    if digits < 1:
        raise ValueError("need at least one decimal digit")
    if isinstance(x, mpfr):
        num, den = x.as_integer_ratio()
        v = Fraction(num, den)
    else:
        q = _as_exact(x)
        v = Fraction(int(q.numerator), int(q.denominator))
    scaled = v * 10**digits
    if mode == "down":
        n = scaled.numerator // scaled.denominator
    elif mode == "up":
        n = -((-scaled.numerator) // scaled.denominator)
    elif mode == "nearest":
        n = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    else:
        raise ValueError(f"unknown rounding mode {mode!r}")
    sign = "-" if n < 0 else ""
    m = abs(n)
    return f"{sign}{m // 10**digits}.{m % 10**digits:0{digits}d}"
