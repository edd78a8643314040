"""Closed intervals with exact rational endpoints, and a certified enclosure of pi."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor

from .exactmath import Q, Rational, fmt_rational


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Q(self.lo))
        object.__setattr__(self, "hi", Q(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Rational) -> "RationalInterval":
        return cls(Q(x), Q(x))

    @staticmethod
    def _lift(other) -> "RationalInterval":
        if isinstance(other, RationalInterval):
            return other
        return RationalInterval.point(other)

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        return self.lo <= Q(x) <= self.hi

    __contains__ = contains

    def is_positive(self) -> bool:
        return self.lo > 0

    def is_negative(self) -> bool:
        return self.hi < 0

    def __add__(self, other) -> "RationalInterval":
        o = self._lift(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "RationalInterval":
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other) -> "RationalInterval":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RationalInterval":
        return self._lift(other) - self

    def __mul__(self, other) -> "RationalInterval":
        if isinstance(other, (int, Fraction)):
            a, b = self.lo * other, self.hi * other
            return RationalInterval(min(a, b), max(a, b))
        o = self._lift(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "RationalInterval":
        return self * self._lift(other).reciprocal()

    def __rtruediv__(self, other) -> "RationalInterval":
        return self._lift(other) * self.reciprocal()

    def __pow__(self, e: int) -> "RationalInterval":
        if e < 0:
            return (self**-e).reciprocal()
        if e == 0:
            return RationalInterval.point(1)
        a, b = self.lo**e, self.hi**e
        if e % 2 == 1 or self.lo >= 0:
            return RationalInterval(min(a, b), max(a, b))
        if self.hi <= 0:
            return RationalInterval(b, a)
        return RationalInterval(Fraction(0), max(a, b))

    def round_out(self, bits: int) -> "RationalInterval":
        """Widen to endpoints on the grid 2**-bits (keeps denominators small)."""
        scale = 1 << bits
        return RationalInterval(
            Fraction(floor(self.lo * scale), scale), Fraction(ceil(self.hi * scale), scale)
        )

    def to_json(self) -> list[str]:
        return [fmt_rational(self.lo), fmt_rational(self.hi)]

    def __repr__(self) -> str:
        return f"[{float(self.lo):.17g}, {float(self.hi):.17g}]"


def _atan_inv(q: int, bits: int) -> RationalInterval:
    """arctan(1/q) for integer q > 1.

    The Taylor series alternates with strictly decreasing terms, so any two
    consecutive partial sums bracket the limit.
    """
    eps = Fraction(1, 1 << bits)
    s = Fraction(0)
    k = 0
    while True:
        term = Fraction(1, (2 * k + 1) * q ** (2 * k + 1))
        nxt = s + term if k % 2 == 0 else s - term
        if term < eps and k > 0:
            return RationalInterval(min(s, nxt), max(s, nxt))
        s = nxt
        k += 1


@lru_cache(maxsize=None)
def pi_enclosure(precision_bits: int = 256) -> RationalInterval:
    """Interval containing pi of width exactly 2**-(precision_bits + 1).

    Built from Machin's formula pi = 16 atan(1/5) - 4 atan(1/239), each atan
    bracketed by consecutive partial sums. The result is re-anchored on a
    dyadic grid so that widths halve exactly from one precision to the next.
    """
    if precision_bits < 16:
        raise ValueError("precision_bits must be >= 16")
    b = precision_bits + 8
    inner = 16 * _atan_inv(5, b) - 4 * _atan_inv(239, b)
    # inner width <= 20 * 2**-b, well below the 2**-(p+2) grid step used here
    step = Fraction(1, 1 << (precision_bits + 2))
    lo = floor(inner.lo / step) * step
    hi = lo + 2 * step
    assert inner.hi <= hi
    return RationalInterval(lo, hi)
