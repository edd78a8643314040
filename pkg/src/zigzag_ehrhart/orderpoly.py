"""Order polynomials Omega(P; t) by four independent routes, and the shifted
coefficients of Omega(Z_n; t - 1/2).

* ``brute``: count order-preserving maps P -> [T] over the ideal lattice for
  T = 1..n+1 and interpolate.
* ``kreweras``: determinant of binomial polynomials for the ribbon skew shape
  of Z_n.
* ``minor``: first-row expansion of that determinant as a recursion in n.
* ``decomposition``: c_k(P) as a sum over ideal chains of products of linear
  coefficients of the blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import CapacityError
from .exactmath import Poly, binomial_poly, interpolate, poly_det
from .posets import Poset, ideal_chain_masks, mask_to_set, zigzag

MAX_BRUTE_SIZE = 8
METHODS = ("brute", "kreweras", "minor", "decomposition")


@dataclass(frozen=True)
class OrderPolyResult:
    poly: Poly
    method: str
    n: int

    def scaled(self) -> list[Fraction]:
        """Coefficients of n! * Omega(P; t)."""
        f = factorial(self.n)
        return [f * self.poly.coeff(k) for k in range(self.n + 1)]


@dataclass(frozen=True)
class ShiftedCoefficients:
    """``f[k] = n! * [t^k] Omega(Z_n; t - 1/2)``."""

    n: int
    f: tuple[Fraction, ...]

    def plain(self, k: int) -> Fraction:
        """The unnormalized coefficient [t^k] Omega(Z_n; t - 1/2)."""
        return self.f[k] / factorial(self.n)

    def as_poly(self) -> Poly:
        """Omega(Z_n; t - 1/2) itself."""
        return Poly(self.f) / factorial(self.n)


def _check_brute(p: Poset) -> None:
    if p.n > MAX_BRUTE_SIZE:
        raise CapacityError(f"brute-force order polynomial supports at most {MAX_BRUTE_SIZE} elements")


def count_order_preserving_maps(p: Poset, t: int) -> int:
    """Number of order-preserving maps P -> {1..t}.

    Such a map is the same as a multichain {} = I_0 <= I_1 <= ... <= I_t = P of
    ideals (I_j = preimage of {1..j}), counted here level by level.
    """
    ideals = p.ideal_masks
    subs = [[j for j, b in enumerate(ideals) if b & a == b] for a in ideals]
    cnt = [1 if m == 0 else 0 for m in ideals]
    for _ in range(t):
        cnt = [sum(cnt[j] for j in s) for s in subs]
    return cnt[ideals.index(p.full_mask)]


def order_poly_brute(p: Poset) -> OrderPolyResult:
    _check_brute(p)
    if p.n == 0:
        return OrderPolyResult(Poly.const(1), "brute", 0)
    pts = [(t, count_order_preserving_maps(p, t)) for t in range(1, p.n + 2)]
    return OrderPolyResult(interpolate(pts, p.n), "brute", p.n)


# -- Kreweras determinant -------------------------------------------------


def zigzag_skew_shape(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Ribbon shape lambda/mu whose cell poset is Z_n.

    Rows of two cells overlap by one column; for odd n the last row is a
    single cell.
    """
    if n < 1:
        raise ValueError("zigzag needs n >= 1")
    k = n // 2
    rows = k if n % 2 == 0 else k + 1
    lam = tuple(k - i + 2 for i in range(1, rows + 1))
    mu = tuple(max(k - i, 0) for i in range(1, rows + 1))
    return lam, mu


def kreweras_matrix(lam, mu) -> list[list[Poly]]:
    """Entries binom(lam_i - mu_j + t - 1, lam_i - mu_j - i + j) (zero for negative bottom)."""
    ell = len(lam)
    mu = tuple(mu) + (0,) * (ell - len(mu))
    m = []
    for i in range(1, ell + 1):
        row = []
        for j in range(1, ell + 1):
            d = lam[i - 1] - mu[j - 1]
            b = d - i + j
            row.append(binomial_poly(d - 1, b) if b >= 0 else Poly())
        m.append(row)
    return m


def skew_order_poly(lam, mu) -> Poly:
    return poly_det(kreweras_matrix(lam, mu))


def order_poly_kreweras(n: int) -> OrderPolyResult:
    return OrderPolyResult(skew_order_poly(*zigzag_skew_shape(n)), "kreweras", n)


# -- minor recursion -----------------------------------------------------


@lru_cache(maxsize=None)
def _minor_poly(n: int) -> Poly:
    if n == 0:
        return Poly.const(1)
    if n == 1:
        return Poly.t()
    k = n // 2
    acc = Poly()
    for i in range(1, k + 1):
        term = binomial_poly(i, 2 * i) * _minor_poly(n - 2 * i)
        acc = acc + term if i % 2 == 1 else acc - term
    if n % 2 == 1:
        last = binomial_poly(k, 2 * k + 1)
        acc = acc + last if k % 2 == 0 else acc - last
    return acc


def order_poly_minor_recursion(n: int) -> OrderPolyResult:
    if n < 1:
        raise ValueError("zigzag needs n >= 1")
    return OrderPolyResult(_minor_poly(n), "minor", n)


# -- decomposition formula ----------------------------------------------


@lru_cache(maxsize=None)
def _c1_by_key(key) -> Fraction:
    n, covers = key
    return order_poly_brute(Poset(n, covers)).poly.coeff(1)


def _block_c1(p: Poset, mask: int) -> Fraction:
    # a difference of two ideals is convex, so its induced order is generated
    # by the covers of P inside it
    return _c1_by_key(p.induced(mask_to_set(mask)).canonical_key())


def decomposition_coefficients(p: Poset, k: int) -> Fraction:
    """c_k(P) = (1/k!) * sum over ideal chains of length k of prod c_1(block).

    The chain sum is accumulated one ideal at a time: ``acc[I]`` holds the
    sum over chains {} < ... < I of the block products so far.
    """
    _check_brute(p)
    if not 1 <= k <= p.n:
        raise ValueError(f"need 1 <= k <= {p.n}")
    ideals = p.ideal_masks
    above = {a: [b for b in ideals if b != a and b & a == a] for a in ideals}
    acc = {0: Fraction(1)}
    for _ in range(k):
        nxt: dict[int, Fraction] = {}
        for a, val in acc.items():
            for b in above[a]:
                c1 = _block_c1(p, b ^ a)
                if c1:
                    nxt[b] = nxt.get(b, Fraction(0)) + val * c1
        acc = nxt
    return acc.get(p.full_mask, Fraction(0)) / factorial(k)


def decomposition_coefficients_enumerated(p: Poset, k: int) -> Fraction:
    """Same sum, enumerating every ideal chain explicitly (slow reference path)."""
    _check_brute(p)
    total = Fraction(0)
    for masks in ideal_chain_masks(p, k):
        prod = Fraction(1)
        prev = 0
        for m in masks:
            prod *= _block_c1(p, m ^ prev)
            prev = m
        total += prod
    return total / factorial(k)


def order_poly_decomposition(p: Poset) -> OrderPolyResult:
    _check_brute(p)
    coeffs = [Fraction(0)] + [decomposition_coefficients(p, k) for k in range(1, p.n + 1)]
    return OrderPolyResult(Poly(coeffs), "decomposition", p.n)


def c1_zigzag(n: int) -> Fraction:
    """Linear coefficient of Omega(Z_n; t), closed form."""
    if n < 1:
        raise ValueError("zigzag needs n >= 1")
    if n % 2:
        h = (n - 1) // 2
        return Fraction(factorial(h) ** 2, factorial(n))
    return Fraction(factorial(n // 2) * factorial((n - 2) // 2), factorial(n))


def order_poly(n: int, method: str) -> OrderPolyResult:
    """Omega(Z_n; t) by the named method."""
    if method == "brute":
        return order_poly_brute(zigzag(n))
    if method == "kreweras":
        return order_poly_kreweras(n)
    if method == "minor":
        return order_poly_minor_recursion(n)
    if method == "decomposition":
        return order_poly_decomposition(zigzag(n))
    raise ValueError(f"unknown method {method!r}")


def shifted_coefficients(n: int, source: OrderPolyResult) -> ShiftedCoefficients:
    """n! times the coefficients of Omega(Z_n; t - 1/2)."""
    if source.n != n:
        raise ValueError(f"source is for n={source.n}, not {n}")
    shifted = source.poly.shift(Fraction(-1, 2)) * factorial(n)
    return ShiftedCoefficients(n, tuple(shifted.coeff(k) for k in range(n + 1)))
