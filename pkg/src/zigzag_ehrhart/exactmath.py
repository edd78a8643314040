"""Exact rational scalars, dense univariate polynomials, determinants and
interpolation.

Scalars are :class:`fractions.Fraction`, which is already normalized on
construction (gcd-reduced, positive denominator), so equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def Q(value) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"not an exact rational: {value!r}")


def fmt_rational(q: Rational) -> str:
    """Canonical string form: "num/den", or "num" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    # Fraction also accepts decimals such as "1.5", which the CLI relies on.
    return Fraction(text.strip())


class Poly:
    """Dense polynomial in one variable over the rationals.

    ``coeffs[i]`` is the coefficient of ``t**i``; trailing zeros are trimmed,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        c = [Q(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, a: Rational) -> "Poly":
        return cls((a,))

    @classmethod
    def monomial(cls, k: int, a: Rational = 1) -> "Poly":
        return cls([0] * k + [a])

    @classmethod
    def t(cls) -> "Poly":
        return cls((0, 1))

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    def degree(self) -> int:
        """Index of the last nonzero coefficient; -1 for the zero polynomial."""
        return len(self._c) - 1

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self._c):
            return self._c[k]
        return Fraction(0)

    def leading(self) -> Fraction:
        return self._c[-1] if self._c else Fraction(0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Poly.const(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Poly([{', '.join(fmt_rational(a) for a in self._c)}])"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k, a in enumerate(self._c):
            if a == 0:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and a == 1:
                terms.append(mono)
            elif mono and a == -1:
                terms.append("-" + mono)
            else:
                s = fmt_rational(a)
                terms.append(f"({s}){mono}" if mono and "/" in s else s + mono)
        return " + ".join(terms).replace("+ -", "- ")

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(Q(other))

    def __add__(self, other) -> "Poly":
        o = self._lift(other)._c
        a = self._c
        if len(a) < len(o):
            a, o = o, a
        return Poly([x + (o[i] if i < len(o) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-a for a in self._c])

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly([a * other for a in self._c])
        o = self._lift(other)._c
        a = self._c
        if not a or not o:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(o) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(o):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Rational) -> "Poly":
        s = Q(scalar)
        return Poly([a / s for a in self._c])

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative polynomial power")
        result, base = Poly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, divisor: "Poly") -> tuple["Poly", "Poly"]:
        """Euclidean division over Q."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = divisor._c
        dl = len(dq) - 1
        quot = [Fraction(0)] * max(len(rem) - dl, 0)
        for i in range(len(rem) - 1, dl - 1, -1):
            c = rem[i] / dq[-1]
            if c == 0:
                continue
            quot[i - dl] = c
            for j, d in enumerate(dq):
                rem[i - dl + j] -= c * d
        return Poly(quot), Poly(rem[:dl])

    def exact_div(self, divisor: "Poly") -> "Poly":
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    # -- evaluation and substitution ---------------------------------------
    def __call__(self, x):
        """Horner evaluation; works for any ring element (Fraction, Poly, interval)."""
        acc = None
        for a in reversed(self._c):
            acc = a if acc is None else acc * x + a
        return Fraction(0) if acc is None else acc

    def shift(self, c: Rational) -> "Poly":
        """Return p(t + c), expanded exactly."""
        c = Q(c)
        acc = Poly()
        lin = Poly((c, 1))
        for a in reversed(self._c):
            acc = acc * lin + a
        return acc

    def scale(self, s: Rational) -> "Poly":
        """Return p(s*t)."""
        s = Q(s)
        return Poly([a * s**k for k, a in enumerate(self._c)])

    def derivative(self) -> "Poly":
        return Poly([k * a for k, a in enumerate(self._c)][1:])

    def to_json(self) -> list[str]:
        return [fmt_rational(a) for a in self._c]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(parse_rational(s) for s in data)


def binomial_poly(a: Rational, b: int) -> Poly:
    """binom(t + a, b) as a degree-b polynomial in t.

    The offset ``a`` may be any rational, so half-integer shifts are passed
    directly as ``Fraction(1, 2)`` etc.
    """
    if b < 0:
        raise ValueError("binomial_poly needs b >= 0")
    a = Q(a)
    p = Poly.const(1)
    for j in range(b):
        p = p * Poly((a - j, 1))
    return p / factorial(b)


def _check_square(m: Sequence[Sequence]) -> int:
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("determinant needs a non-empty square matrix")
    return n


def poly_det(m: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant by Laplace expansion with minors memoized on column sets.

    Row ``r`` is expanded against the remaining columns, so every minor is
    identified by the bitmask of columns still in use: at most ``2**n`` of them.
    """
    n = _check_square(m)
    rows = [[Poly._lift(e) for e in row] for row in m]

    @lru_cache(maxsize=None)
    def minor(cols: int) -> Poly:
        r = bin(cols).count("1")
        if r == n:
            return Poly.const(1)
        acc = Poly()
        sign = 1
        for c in range(n):
            if cols >> c & 1:
                continue
            entry = rows[r][c]
            if entry:
                term = entry * minor(cols | (1 << c))
                acc = acc + term if sign > 0 else acc - term
            sign = -sign
        return acc

    return minor(0)


def poly_det_bareiss(m: Sequence[Sequence[Poly]]) -> Poly:
    """Fraction-free (Bareiss) elimination; each division is exact in Q[t]."""
    n = _check_square(m)
    a = [[Poly._lift(e) for e in row] for row in m]
    sign = 1
    prev = Poly.const(1)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for r in range(k + 1, n):
                if not a[r][k].is_zero():
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return Poly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def interpolate(points: Sequence[tuple[Rational, Rational]], degree_bound: int) -> Poly:
    """Unique polynomial of degree <= degree_bound through ``points`` (Newton form).

    Exactly ``degree_bound + 1`` points are used for construction; any extra
    points must lie on the result.
    """
    pts = [(Q(x), Q(y)) for x, y in points]
    if len(pts) < degree_bound + 1:
        raise ValueError(f"need {degree_bound + 1} points, got {len(pts)}")
    xs = [x for x, _ in pts]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    use = pts[: degree_bound + 1]
    xs = [x for x, _ in use]
    dd = [y for _, y in use]
    for level in range(1, len(use)):
        for i in range(len(use) - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    p = Poly()
    for i in range(len(use) - 1, -1, -1):
        p = p * Poly((-xs[i], 1)) + dd[i]
    for x, y in pts[degree_bound + 1 :]:
        if p(x) != y:
            raise ValueError(f"point ({x}, {y}) is not on a degree-{degree_bound} polynomial")
    return p
