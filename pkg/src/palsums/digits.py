"""Base-b digit arithmetic and palindrome enumeration.

A k-digit base-b palindrome is determined by its "free half": the leading
digit a in [1, b-1] together with the first ceil((k-2)/2) interior digits,
each in [0, b-1].  The remaining digits are forced by mirroring.  Everything
here enumerates through free halves; the full range [b^(k-1), b^k) is never
scanned.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Sequence


def check_base(b: int) -> int:
    if not isinstance(b, int) or isinstance(b, bool) or b < 2:
        raise ValueError(f"base must be an integer >= 2, got {b!r}")
    return b


def _check_length(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ValueError(f"digit length must be an integer >= 1, got {k!r}")
    return k


@dataclass(frozen=True)
class DigitString:
    """Base-b digit vector, most-significant digit first."""

    base: int
    digits: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.base)
        if len(self.digits) < 1:
            raise ValueError("digit string must be non-empty")
        if self.digits[0] == 0:
            raise ValueError("leading digit must be nonzero")
        for d in self.digits:
            if not 0 <= d < self.base:
                raise ValueError(f"digit {d} out of range for base {self.base}")

    def value(self) -> int:
        n = 0
        for d in self.digits:
            n = n * self.base + d
        return n

    def is_palindrome(self) -> bool:
        return self.digits == self.digits[::-1]

    def __len__(self) -> int:
        return len(self.digits)

    def __iter__(self):
        return iter(self.digits)


def to_digits(n: int, b: int) -> DigitString:
    """Expand a positive integer into its base-b digit string."""
    check_base(b)
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"expected a positive integer, got {n!r}")
    ds: list[int] = []
    while n:
        n, r = divmod(n, b)
        ds.append(r)
    ds.reverse()
    return DigitString(b, tuple(ds))


def is_palindrome(n: int, b: int) -> bool:
    """True iff the base-b expansion of n reads the same in both directions."""
    return to_digits(n, b).is_palindrome()


def interior_free_count(k: int) -> int:
    """Number of freely chosen interior digits of a k-digit palindrome.

    Equals ceil((k-2)/2); zero for k in {1, 2}.
    """
    _check_length(k)
    return (k - 1) // 2


def count_palindromes(b: int, k: int) -> int:
    """Number of k-digit base-b palindromes: (b-1) * b^ceil((k-2)/2)."""
    check_base(b)
    return (b - 1) * b ** interior_free_count(k)


def free_coefficients(b: int, k: int) -> list[int]:
    """Positional weight of each free digit of a k-digit base-b palindrome.

    Index 0 is the leading digit a; indices 1..ceil((k-2)/2) are the interior
    free digits.  A free digit at string position j also occupies the mirror
    position k-1-j, so its weight is b^(k-1-j) + b^j, except for the exact
    middle digit of an odd-length string which occurs once.
    """
    check_base(b)
    _check_length(k)
    coeffs = []
    for j in range(interior_free_count(k) + 1):
        if j == k - 1 - j:
            coeffs.append(b**j)
        else:
            coeffs.append(b ** (k - 1 - j) + b**j)
    return coeffs


def enumerate_palindromes(b: int, k: int) -> Iterator[int]:
    """Yield all k-digit base-b palindromes in strictly increasing order.

    Free halves are iterated lexicographically with the leading digit
    outermost; mirrored values are monotone in the free half, so the stream
    is increasing.
    """
    coeffs = free_coefficients(b, k)
    lead, interior = coeffs[0], coeffs[1:]
    for a in range(1, b):
        head = a * lead
        if not interior:
            yield head
            continue
        for combo in product(range(b), repeat=len(interior)):
            n = head
            for u, c in zip(combo, interior):
                n += u * c
            yield n


def unrank_palindrome(b: int, k: int, i: int) -> int:
    """Return the i-th (0-based) k-digit base-b palindrome."""
    total = count_palindromes(b, k)
    if not isinstance(i, int) or not 0 <= i < total:
        raise IndexError(f"palindrome index {i!r} out of range [0, {total})")
    coeffs = free_coefficients(b, k)
    j = interior_free_count(k)
    span = b**j
    a, rem = 1 + i // span, i % span
    n = a * coeffs[0]
    for c in reversed(coeffs[1:]):
        rem, u = divmod(rem, b)
        n += u * c
    return n


def rank_palindrome(n: int, b: int) -> tuple[int, int]:
    """Inverse of unrank: map a palindrome to (digit length, index)."""
    ds = to_digits(n, b)
    if not ds.is_palindrome():
        raise ValueError(f"{n} is not a palindrome in base {b}")
    k = len(ds)
    j = interior_free_count(k)
    free: Sequence[int] = ds.digits[: j + 1]
    i = free[0] - 1
    for u in free[1:]:
        i = i * b + u
    return k, i
