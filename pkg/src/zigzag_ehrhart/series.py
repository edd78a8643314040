"""Coefficient series W+, W-, C, R, U; block weights; the weighted-sum
formula for f_{n,k}; rows G_n(x) of the bivariate generating function; the
coefficientwise product check against Euler numbers; and crown coefficients.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod

from .exactmath import Poly
from .hilbert_kunz import euler_number
from .orderpoly import order_poly_minor_recursion, shifted_coefficients
from .posets import BlockKind, crown_odd_decompositions, odd_decompositions

SERIES_NAMES = ("wplus", "wminus", "c", "r", "u")
MAX_HADAMARD_N = 16


def _wplus(i: int) -> Fraction:
    if i % 2 == 0:
        return Fraction(0)
    k = i // 2
    return Fraction(factorial(k) ** 2, factorial(i))


def _wminus(i: int) -> Fraction:
    if i % 2 == 0:
        return Fraction(0)
    if i == 1:
        return Fraction(1)
    k = i // 2
    return Fraction(-factorial(k) ** 2, 2 * k * factorial(i))


def _c(i: int) -> Fraction:
    if i % 2 or i == 0:
        return Fraction(0)
    k = i // 2
    return Fraction(2 * factorial(k - 1) ** 2, factorial(i))


def _r(i: int) -> Fraction:
    if i % 2:
        return Fraction(0)
    if i == 0:
        return Fraction(1)
    n = i // 2
    return Fraction(-2 * comb(2 * n - 2, n - 1), n * 16**n)


def _u(i: int) -> Fraction:
    if i % 2 == 0:
        return Fraction(0)
    k = i // 2
    return Fraction(comb(2 * k, k), i * 16**k)


_FORMULAS = {"wplus": _wplus, "wminus": _wminus, "c": _c, "r": _r, "u": _u}


def series_coeff(name: str, k: int) -> Fraction:
    """Coefficient of z^k in the named series."""
    if k < 0:
        raise ValueError("series index must be >= 0")
    try:
        return _FORMULAS[name.lower()](k)
    except KeyError:
        raise ValueError(f"unknown series {name!r}; expected one of {SERIES_NAMES}") from None


@dataclass
class SeriesStream:
    """Lazily filled coefficient list of one named series.

    The cache only ever grows; a lock makes extension safe when one stream
    is shared across threads.
    """

    name: str
    _cache: list[Fraction] = field(default_factory=list, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def __post_init__(self):
        self.name = self.name.lower()
        if self.name not in _FORMULAS:
            raise ValueError(f"unknown series {self.name!r}")

    def coefficient(self, index: int) -> Fraction:
        if index < 0:
            raise ValueError("series index must be >= 0")
        if index >= len(self._cache):
            with self._lock:
                f = _FORMULAS[self.name]
                for i in range(len(self._cache), index + 1):
                    self._cache.append(f(i))
        return self._cache[index]

    def upto(self, k: int) -> list[Fraction]:
        self.coefficient(k)
        return self._cache[: k + 1]

    __getitem__ = coefficient


# -- weights and the weighted-sum formula --------------------------------


def block_weight(kind: BlockKind, m: int) -> Fraction:
    if kind is BlockKind.EVEN or m % 2 == 0:
        return Fraction(0)
    if kind is BlockKind.ODD_UP:
        return _wminus(m)
    if kind is BlockKind.ODD_DOWN:
        return _wplus(m)
    return _u(m)


def decomposition_weight(d) -> Fraction:
    return prod((block_weight(b.kind, b.size) for b in d.blocks), start=Fraction(1))


def weighted_sum_g(n: int, k: int) -> Fraction:
    """Sum of products of block weights over decompositions of Z_n into k odd blocks."""
    return sum((decomposition_weight(d) for d in odd_decompositions(n, k)), Fraction(0))


def weighted_sum_f(n: int, k: int) -> Fraction:
    """f_{n,k} = (n!/k!) E_k * weighted_sum_g(n, k)."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return Fraction(factorial(n), factorial(k)) * euler_number(k) * weighted_sum_g(n, k)


# -- G rows -----------------------------------------------------------


@dataclass(frozen=True)
class GRow:
    n: int
    poly: Poly

    def coeff(self, k: int) -> Fraction:
        return self.poly.coeff(k)


@lru_cache(maxsize=None)
def _g_coeffs(n: int) -> tuple[Fraction, ...]:
    if n == 0:
        return (Fraction(1),)
    g = [Fraction(0)] * (n + 1)
    if n % 2 == 0:
        g[0] = _r(n)
    else:
        g[1] = _wminus(n)
    for k in range(2, n + 1):
        if (n - k) % 2:
            continue
        g[k] = sum(
            (_c(i) * _g_coeff(n - i, k - 2) for i in range(2, n - k + 3, 2)),
            Fraction(0),
        )
    return tuple(g)


def _g_coeff(n: int, k: int) -> Fraction:
    row = _g_coeffs(n)
    return row[k] if k < len(row) else Fraction(0)


def g_row(n: int) -> GRow:
    """G_n(x) from the two-step recursion in n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return GRow(n, Poly(_g_coeffs(n)))


# Z_1 is a single point, so Omega(Z_1; t - 1/2) = t - 1/2 is not odd while
# g_{1,0} = 0; the identity holds for every other (n, k).
HADAMARD_EXCEPTIONS = frozenset({(1, 0)})


@dataclass
class HadamardReport:
    n_max: int
    checked: int
    failure: tuple[int, int, Fraction, Fraction] | None = None
    skipped: tuple[tuple[int, int], ...] = ()

    @property
    def ok(self) -> bool:
        return self.failure is None


def hadamard_check(n_max: int) -> HadamardReport:
    """Check [t^k] Omega(Z_n; t-1/2) == (E_k/k!) g_{n,k} for all k <= n <= n_max."""
    if not 0 <= n_max <= MAX_HADAMARD_N:
        raise ValueError(f"n_max must be in [0, {MAX_HADAMARD_N}]")
    checked = 0
    skipped = []
    for n in range(n_max + 1):
        shifted = (
            shifted_coefficients(n, order_poly_minor_recursion(n)).as_poly() if n else Poly.const(1)
        )
        for k in range(n + 1):
            if (n, k) in HADAMARD_EXCEPTIONS:
                skipped.append((n, k))
                continue
            lhs = shifted.coeff(k)
            rhs = Fraction(euler_number(k), factorial(k)) * _g_coeff(n, k)
            checked += 1
            if lhs != rhs:
                return HadamardReport(n_max, checked, (n, k, lhs, rhs), tuple(skipped))
    return HadamardReport(n_max, checked, None, tuple(skipped))


# -- crown ------------------------------------------------------------


def crown_arc_weight(start: int, size: int) -> Fraction:
    """Arc weight on the crown: no arc is special."""
    if size % 2 == 0:
        return Fraction(0)
    return _wminus(size) if start % 2 == 1 else _wplus(size)


def crown_coefficients(two_n: int, k: int) -> Fraction:
    """(2n)! [t^k] Omega(C_{2n}; t - 1/2) as a sum over cyclic arc partitions.

    Each partition into k odd arcs contributes the product of arc weights.
    The blocks of such a partition are ordered as a crown on k elements,
    which has (k/2) E_{k-1} linear extensions; with the usual (2n)!/k!
    this gives the prefactor (2n)! E_{k-1} / (2 (k-1)!).
    """
    decs = crown_odd_decompositions(two_n, k)
    total = sum(
        (prod((crown_arc_weight(s, m) for s, m in d.arcs), start=Fraction(1)) for d in decs),
        Fraction(0),
    )
    return Fraction(factorial(two_n), 2 * factorial(k - 1)) * euler_number(k - 1) * total


# -- truncated power series (test oracle for G) -----------------------------


def ps_mul(a: list, b: list, order: int) -> list:
    """Product of two truncated series (entries Fraction or Poly) mod z^(order+1)."""
    zero = Poly() if any(isinstance(e, Poly) for e in a[:1] + b[:1]) else Fraction(0)
    out = [zero] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if not x:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def arcsin_half_series(order: int) -> list[Fraction]:
    """Taylor coefficients of arcsin(z/2)."""
    out = [Fraction(0)] * (order + 1)
    for j in range(order // 2 + 1):
        i = 2 * j + 1
        if i <= order:
            out[i] = Fraction(comb(2 * j, j), 4**j * i * 2**i)
    return out


def sqrt_one_minus_quarter_z2(order: int) -> list[Fraction]:
    """Taylor coefficients of sqrt(1 - z^2/4) from the binomial series."""
    out = [Fraction(0)] * (order + 1)
    c = Fraction(1)
    for j in range(order // 2 + 1):
        out[2 * j] = c * Fraction(-1, 4) ** j
        c = c * (Fraction(1, 2) - j) / (j + 1)
    return out


def closed_form_g_rows(order: int) -> list[Poly]:
    """Rows [z^n] of sqrt(1-z^2/4)(1 + 2xA)/(1 - 4x^2 A^2), A = arcsin(z/2).

    Coefficients are polynomials in x. The denominator is expanded as a
    geometric series; (4x^2A^2)^j starts at z^(2j), so it terminates.
    """
    a = arcsin_half_series(order)
    s = sqrt_one_minus_quarter_z2(order)
    x = Poly.t()
    a2 = ps_mul(a, a, order)
    q = [c * 4 * x * x for c in a2]  # 4 x^2 A^2
    geo = [Poly.const(1)] + [Poly()] * order
    term = list(geo)
    for _ in range(order // 2):
        term = ps_mul(term, q, order)
        geo = [g + t for g, t in zip(geo, term)]
    a_s = ps_mul(a, s, order)
    num = [Poly.const(sv) + x * (2 * av) for sv, av in zip(s, a_s)]
    return ps_mul(num, geo, order)
