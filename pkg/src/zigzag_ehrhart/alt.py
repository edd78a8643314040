"""Certified evaluation of the alternating functional Alt_x on polynomials.

For a polynomial f, Alt_x(f) = sum_k (-1)^k/(2k+1) f((-1)^k x/(2k+1)), so on
monomials Alt_x(x^m) = S(m) x^m with

    S(m) = sum_{k>=0} (-1)^{k(m+1)} / (2k+1)^{m+1}.

Everything here encloses such sums with rational intervals: partial sums plus
a proven tail bound, and pi from :func:`pi_enclosure`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct

from .exactmath import Poly, Q
from .interval import RationalInterval, pi_enclosure
from .posets import compositions
from .series import _c, _r, _wminus, g_row

DEFAULT_TERMS = 64
DEFAULT_PI_BITS = 256
MAX_ESCALATIONS = 4
MAX_B_INDEX = 40
PI_BITS_ENV = "ZIGZAG_EHRHART_PI_BITS"


def default_pi_bits() -> int:
    raw = os.environ.get(PI_BITS_ENV)
    return int(raw) if raw else DEFAULT_PI_BITS


# -- S(n) and zeta_odd -------------------------------------------------


@dataclass(frozen=True)
class AltConstant:
    n: int
    enclosure: RationalInterval
    terms_used: int


def _positive_tail(e: int, terms: int) -> RationalInterval:
    """Enclosure of sum_{k >= K} (2k+1)^-e for e >= 2, K = terms.

    f(x) = (2x+1)^-e is decreasing and convex. Decreasing gives
    f(k) >= int_k^{k+1} f, so the tail is at least int_K^oo f. Convexity
    gives f(k) <= int_{k-1/2}^{k+1/2} f (midpoint rule), so the tail is at
    most int_{K-1/2}^oo f. Both integrals are 1/(2(e-1)(2x+1)^(e-1)).
    """
    lo = Fraction(1, 2 * (e - 1) * (2 * terms + 1) ** (e - 1))
    hi = Fraction(1, 2 * (e - 1) * (2 * terms) ** (e - 1))
    return RationalInterval(lo, hi)


def _round_bits(enc: RationalInterval, bits: int | None) -> RationalInterval:
    return enc if bits is None else enc.round_out(bits)


@lru_cache(maxsize=None)
def alt_constant(n: int, terms: int = DEFAULT_TERMS, bits: int | None = None) -> AltConstant:
    """Enclosure of S(n) from ``terms`` terms.

    n even: the series alternates with decreasing terms, so the sums of the
    first K and K+1 terms bracket S(n).
    n odd: all terms are positive and the tail is bounded by
    :func:`_positive_tail` with exponent n+1.
    ``bits``, if given, rounds the endpoints outward to that dyadic grid.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if terms < 8:
        raise ValueError("terms must be >= 8")
    e = n + 1
    if n % 2 == 0:
        s = sum((Fraction((-1) ** k, (2 * k + 1) ** e) for k in range(terms)), Fraction(0))
        nxt = s + Fraction((-1) ** terms, (2 * terms + 1) ** e)
        enc = RationalInterval(min(s, nxt), max(s, nxt))
    else:
        s = sum((Fraction(1, (2 * k + 1) ** e) for k in range(terms)), Fraction(0))
        enc = s + _positive_tail(e, terms)
    return AltConstant(n, _round_bits(enc, bits), terms)


@lru_cache(maxsize=None)
def zeta_odd(n: int, terms: int = DEFAULT_TERMS, bits: int | None = None) -> RationalInterval:
    """Enclosure of sum_{k>=0} (2k+1)^-n, same tail bound as odd S."""
    if n < 2:
        raise ValueError("zeta_odd diverges for n < 2")
    if terms < 1:
        raise ValueError("terms must be >= 1")
    s = sum((Fraction(1, (2 * k + 1) ** n) for k in range(terms)), Fraction(0))
    return _round_bits(s + _positive_tail(n, terms), bits)


def alt_of_polynomial(
    p: Poly,
    x,
    pi_prec: int | None = None,
    terms: int = DEFAULT_TERMS,
) -> RationalInterval:
    """Enclosure of Alt_x(p) = sum_m p_m S(m) x^m.

    ``x`` may be a rational or an interval (e.g. one built from pi).
    ``pi_prec`` sets the dyadic grid (pi_prec + 64 bits) onto which
    constants and partial results are rounded outward, which keeps
    denominators bounded without losing the enclosure property.
    """
    bits = (pi_prec or default_pi_bits()) + 64
    xi = x if isinstance(x, RationalInterval) else RationalInterval.point(Q(x))
    acc = RationalInterval.point(0)
    for m, c in enumerate(p.coeffs):
        if c:
            term = alt_constant(m, terms, bits).enclosure * (xi**m).round_out(bits) * c
            acc = (acc + term).round_out(bits)
    return acc


# -- H_n and B_n -------------------------------------------------------


@dataclass(frozen=True)
class HPolynomial:
    n: int
    poly: Poly


def h_polynomial(n: int) -> HPolynomial:
    """H_n(x) = G_n(x) - x^n."""
    return HPolynomial(n, g_row(n).poly - Poly.monomial(n))


@dataclass(frozen=True)
class BPolynomial:
    n: int
    poly: Poly


def _check_b(n: int) -> None:
    if n % 2 or not 2 <= n <= MAX_B_INDEX:
        raise ValueError(f"n must be even with 2 <= n <= {MAX_B_INDEX}")


@lru_cache(maxsize=None)
def _b(n: int) -> Poly:
    # B_0 = 0 and odd indices vanish
    if n <= 2 or n % 2:
        return Poly()
    x2 = Poly.monomial(2)
    acc = x2 * _b(n - 2)
    for i in range(4, n + 1, 2):
        # x^2 * x^(n-2-i) written as x^(n-i) so i = n stays polynomial
        acc = acc + (x2 * _b(n - i) + Poly.monomial(n - i)) * _c(i)
    return acc


def b_polynomial(n: int) -> BPolynomial:
    """B_n(x) by the recursion in n."""
    _check_b(n)
    return BPolynomial(n, _b(n))


def b_polynomial_tuples(n: int) -> Poly:
    """B_n(x) as a sum over compositions of n into even parts, not all 2."""
    _check_b(n)
    acc = Poly()
    half = n // 2
    for k in range(1, half + 1):
        for parts in compositions(half, k):
            if all(m == 1 for m in parts):
                continue
            coeff = Fraction(1)
            for m in parts:
                coeff *= _c(2 * m)
            acc = acc + Poly.monomial(2 * k - 2, coeff)
    return acc


# -- residual identities -------------------------------------------------


def _cpoly(i: int) -> Fraction:
    return _c(i) if i >= 0 else Fraction(0)


def _residual_sum(n: int, i_min: int) -> Poly:
    x2 = Poly.monomial(2)
    acc = Poly()
    for i in range(i_min, n - 3, 2):
        acc = acc + _b(i) * (x2 * _cpoly(n - 2 - i) - _cpoly(n - i))
    return acc


def f_residual(n: int) -> Poly:
    """F_n = -C_n + (x^2/12)(x^2 C_{n-6} - C_{n-4})."""
    x2 = Poly.monomial(2)
    return -_cpoly(n) + x2 * (x2 * _cpoly(n - 6) - _cpoly(n - 4)) / 12


def f_hat_residual(n: int) -> Poly:
    """F^_n = -C_n - (x^2/12) C_{n-4} + (x^4/18) C_{n-6}."""
    return (
        -_cpoly(n)
        - Poly.monomial(2, _cpoly(n - 4) / 12)
        + Poly.monomial(4, _cpoly(n - 6) / 18)
    )


@dataclass(frozen=True)
class IdentityResult:
    name: str
    lhs: Poly
    rhs: Poly

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def difference(self) -> Poly:
        return self.lhs - self.rhs


@dataclass
class ResidualReport:
    n: int
    results: dict[str, IdentityResult] = field(default_factory=dict)

    def holds(self, name: str) -> bool:
        return self.results[name].holds


def residual_identity_check(n: int) -> ResidualReport:
    """Compare both sides of the residual identities for B_n exactly.

    * ``odd_printed``: 2x^2 B_{n-2} - B_n = F_n + sum_{i=4}^{n-4} B_i (x^2 C_{n-2-i} - C_{n-i})
    * ``odd_with_x2``: same left side = F_n + x^2 sum_{i=6}^{n-4} (...), which
      is what expanding the B recursion twice actually gives
    * ``even_printed``: (5/2)x^2 B_{n-2} - (3/2)B_n = sum_{i=4}^{n-4} (...) + F^_n

    B and C vanish at odd indices, so only even n is meaningful.
    """
    if n < 8 or n % 2:
        raise ValueError("residual identities need even n >= 8")
    if n > MAX_B_INDEX:
        raise ValueError(f"n must be <= {MAX_B_INDEX}")
    x2 = Poly.monomial(2)
    odd_lhs = x2 * _b(n - 2) * 2 - _b(n)
    even_lhs = x2 * _b(n - 2) * Fraction(5, 2) - _b(n) * Fraction(3, 2)
    f = f_residual(n)
    fh = f_hat_residual(n)
    rep = ResidualReport(n)
    rep.results["odd_printed"] = IdentityResult("odd_printed", odd_lhs, f + _residual_sum(n, 4))
    rep.results["odd_with_x2"] = IdentityResult("odd_with_x2", odd_lhs, f + x2 * _residual_sum(n, 6))
    rep.results["even_printed"] = IdentityResult("even_printed", even_lhs, _residual_sum(n, 4) + fh)
    return rep


# -- U-part series --------------------------------------------------------


def _geometric_in_x2c(order: int) -> list[Poly]:
    """Rows of 1/(1 - x^2 C(z)) = sum_j x^(2j) C(z)^j up to z^order."""
    c = [_c(i) for i in range(order + 1)]
    out = [Poly.const(1)] + [Poly()] * order
    power = [Fraction(1)] + [Fraction(0)] * order
    for j in range(1, order // 2 + 1):
        power = [
            sum((power[a] * c[i - a] for a in range(i + 1)), Fraction(0)) for i in range(order + 1)
        ]
        for i, v in enumerate(power):
            if v:
                out[i] = out[i] + Poly.monomial(2 * j, v)
    return out


def _rows_over_z2(numerator: list[Fraction], order: int) -> list[Poly]:
    """Rows of numerator(z) / ((1 - x^2 C(z)) z^2); numerator must start at z^2."""
    if numerator[0] or numerator[1]:
        raise ValueError("numerator is not divisible by z^2")
    num = numerator[2:] + [Fraction(0), Fraction(0)]
    geo = _geometric_in_x2c(order)
    rows = []
    for i in range(order + 1):
        acc = Poly()
        for a in range(i + 1):
            if num[a]:
                acc = acc + geo[i - a] * num[a]
        rows.append(acc)
    return rows


def u_part_numerator(order: int) -> list[Fraction]:
    """(C(z) - z^2) + z (W_-(z) - z), coefficients up to z^(order+2)."""
    out = []
    for i in range(order + 3):
        v = _c(i) + (_wminus(i - 1) if i >= 1 else 0)
        if i == 2:
            v -= 2
        out.append(Fraction(v))
    return out


def u_hat_part_numerator(order: int) -> list[Fraction]:
    """(3/2)(C(z) - z^2) + z^2 (R(z) - 1), coefficients up to z^(order+2)."""
    out = []
    for i in range(order + 3):
        v = Fraction(3, 2) * _c(i) + (_r(i - 2) if i >= 2 else 0)
        if i == 2:
            v -= Fraction(3, 2) + 1
        out.append(Fraction(v))
    return out


def u_part_rows(order: int = 30) -> list[Poly]:
    return _rows_over_z2(u_part_numerator(order), order)


def u_hat_part_rows(order: int = 30) -> list[Poly]:
    return _rows_over_z2(u_hat_part_numerator(order), order)


def rows_nonnegative(rows: list[Poly]) -> bool:
    return all(c >= 0 for r in rows for c in r.coeffs)


def numerator_sign_checks(order: int = 30) -> dict[str, bool]:
    """Termwise facts behind the two numerators: C_{2r+2} + w_-(2r+1) >= 0 and
    (3/2) C_{n+2} + R_n >= 0, i.e. both numerators have nonnegative coefficients."""
    return {
        "u_part": all(v >= 0 for v in u_part_numerator(order)),
        "u_hat_part": all(v >= 0 for v in u_hat_part_numerator(order)),
    }


# -- positivity certificate ---------------------------------------------


@dataclass(frozen=True)
class PositivityCell:
    n: int
    t: Fraction
    interval: RationalInterval
    status: str  # positive | negative | inconclusive
    terms: int
    pi_bits: int


@dataclass
class PositivityReport:
    cells: list[PositivityCell]
    kind: str = "sampled"

    @property
    def ok(self) -> bool:
        return all(c.status == "positive" for c in self.cells)

    def not_certified(self) -> list[PositivityCell]:
        return [c for c in self.cells if c.status != "positive"]


def alt_h_enclosure(n: int, t, terms: int, pi_bits: int) -> RationalInterval:
    """Enclosure of Alt_t(H_n(2t/pi)) = sum_m h_{n,m} S(m) (2t/pi)^m."""
    x = pi_enclosure(pi_bits).reciprocal() * (2 * Q(t))
    return alt_of_polynomial(h_polynomial(n).poly, x, pi_bits, terms)


def _classify(enc: RationalInterval) -> str:
    if enc.is_positive():
        return "positive"
    if enc.is_negative():
        return "negative"
    return "inconclusive"


def certify_cell(n: int, t, terms: int = DEFAULT_TERMS, pi_bits: int | None = None) -> PositivityCell:
    """Certify one (n, t); an undecided interval doubles terms and pi bits, at most 4 times."""
    if n < 8:
        raise ValueError("positivity is claimed for n >= 8")
    t = Q(t)
    if t < Fraction(3, 2):
        raise ValueError("positivity is claimed for t >= 3/2")
    bits = pi_bits or default_pi_bits()
    for attempt in range(MAX_ESCALATIONS + 1):
        enc = alt_h_enclosure(n, t, terms, bits)
        status = _classify(enc)
        if status != "inconclusive" or attempt == MAX_ESCALATIONS:
            return PositivityCell(n, t, enc, status, terms, bits)
        terms, bits = 2 * terms, 2 * bits
    raise AssertionError("unreachable")


def positivity_certificate(
    n_range, t_grid, pi_prec: int | None = None, terms: int = DEFAULT_TERMS
) -> PositivityReport:
    cells = [certify_cell(n, t, terms, pi_prec) for n, t in iproduct(sorted(n_range), sorted(map(Q, t_grid)))]
    return PositivityReport(cells)


def parse_grid(spec: str) -> list[Fraction]:
    """``"a:step:b"`` (inclusive) or a comma list of rationals/decimals."""
    if ":" in spec:
        a, step, b = (Q(s) for s in spec.split(":"))
        if step <= 0:
            raise ValueError("grid step must be positive")
        out = []
        v = a
        while v <= b:
            out.append(v)
            v += step
        return out
    return [Q(s) for s in spec.split(",") if s.strip()]
