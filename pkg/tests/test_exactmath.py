from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from zigzag_ehrhart.exactmath import (
    Poly,
    binomial_poly,
    fmt_rational,
    interpolate,
    parse_rational,
    poly_det,
    poly_det_bareiss,
)
from zigzag_ehrhart.interval import RationalInterval, pi_enclosure

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)
polys = st.lists(rationals, max_size=8).map(Poly)


def test_binomial_examples():
    assert binomial_poly(1, 2) == Poly([0, Fraction(1, 2), Fraction(1, 2)])
    assert binomial_poly(0, 0) == Poly.const(1)
    assert binomial_poly(Fraction(1, 2), 2)(0) == Fraction(-1, 8)
    assert binomial_poly(3, 5).degree() == 5
    with pytest.raises(ValueError):
        binomial_poly(0, -1)


def test_poly_basics():
    t = Poly.t()
    assert Poly([0, 0]).degree() == -1 and Poly().coeffs == ()
    assert (t + 1) ** 2 == Poly([1, 2, 1])
    assert ((t + 1) ** 3).exact_div(t + 1) == (t + 1) ** 2
    assert Poly([1, 2, 3]).shift(1) == Poly([6, 8, 3])
    assert Poly.from_json(Poly([Fraction(1, 2), -3]).to_json()) == Poly([Fraction(1, 2), -3])
    with pytest.raises(ArithmeticError):
        (t * t + 1).exact_div(t + 1)


def test_rational_format():
    assert fmt_rational(Fraction(6, 4)) == "3/2"
    assert fmt_rational(Fraction(-4, 2)) == "-2"
    assert parse_rational("1.5") == Fraction(3, 2)
    assert Fraction(2, 4) == Fraction(1, 2) and Fraction(2, -4).denominator == 2


@given(polys, polys, rationals)
def test_eval_multiplicative(p, q, x):
    assert (p * q)(x) == p(x) * q(x)
    assert (p + q)(x) == p(x) + q(x)


@settings(max_examples=40)
@given(st.lists(rationals, min_size=1, max_size=13))
def test_interpolate_round_trip(coeffs):
    p = Poly(coeffs)
    d = len(coeffs) - 1
    assert interpolate([(x, p(x)) for x in range(-3, d - 2)], d) == p


def test_interpolate_examples_and_errors():
    assert interpolate([(1, 1), (2, 2), (3, 3)], 2) == Poly.t()
    assert interpolate([(0, 1), (1, 1)], 1) == Poly.const(1)
    with pytest.raises(ValueError):
        interpolate([(0, 1), (0, 2)], 1)
    with pytest.raises(ValueError):
        interpolate([(0, 1)], 1)
    with pytest.raises(ValueError):
        interpolate([(0, 0), (1, 1), (2, 5)], 1)


def test_det_examples():
    t = Poly.t()
    assert poly_det([[t]]) == t
    assert poly_det([[t, 1], [1, t]]) == t * t - 1
    with pytest.raises(ValueError):
        poly_det([[t, 1]])


def _cofactor(m):
    if len(m) == 1:
        return m[0][0]
    acc = Poly()
    for j in range(len(m)):
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * _cofactor(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


small_polys = st.lists(st.integers(-3, 3), max_size=3).map(Poly)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.lists(small_polys, min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_methods_agree(m):
    ref = _cofactor(m)
    assert poly_det(m) == ref
    assert poly_det_bareiss(m) == ref


intervals = st.tuples(rationals, rationals).map(lambda ab: RationalInterval(min(ab), max(ab)))


@given(intervals, intervals, st.floats(0, 1), st.floats(0, 1))
def test_interval_soundness(a, b, u, v):
    x = a.lo + Fraction(u) * a.width()
    y = b.lo + Fraction(v) * b.width()
    assert x + y in a + b
    assert x - y in a - b
    assert x * y in a * b
    assert x**3 in a**3 and x**2 in a**2
    if not (b.lo <= 0 <= b.hi):
        assert x / y in a / b
    r = (a * b).round_out(10)
    assert r.contains(a * b)


def test_interval_errors():
    with pytest.raises(ValueError):
        RationalInterval(1, 0)
    with pytest.raises(ZeroDivisionError):
        RationalInterval(-1, 1).reciprocal()


def test_pi_enclosure():
    mpmath.mp.prec = 600
    for bits in (16, 17, 64, 256, 400):
        enc = pi_enclosure(bits)
        assert enc.width() <= Fraction(1, 2**bits)
        lo, hi = (mpmath.mpf(q.numerator) / q.denominator for q in (enc.lo, enc.hi))
        assert lo < mpmath.pi < hi
    assert pi_enclosure(16).lo >= Fraction("3.14158") and pi_enclosure(16).hi <= Fraction("3.14161")
    for bits in range(16, 40):
        assert pi_enclosure(bits + 1).width() * 2 <= pi_enclosure(bits).width()
    near = Fraction(355, 113)
    assert near in pi_enclosure(16)
    assert near not in pi_enclosure(30)
    with pytest.raises(ValueError):
        pi_enclosure(15)
