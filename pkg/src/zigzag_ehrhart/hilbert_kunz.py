"""Euler numbers, Ehrhart polynomials of the Fibonacci and extended Fibonacci
polytopes, and the Hilbert-Kunz multiplicity of the quadrics A_{p,n}."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import CapacityError, IntegrityError
from .exactmath import Poly, interpolate
from .orderpoly import order_poly_minor_recursion

MAX_EULER = 200
MAX_FIB_N = 20
MAX_WY_N = 20


@dataclass(frozen=True)
class EulerTable:
    values: tuple[int, ...]

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


@lru_cache(maxsize=None)
def _euler_upto(n_max: int) -> tuple[int, ...]:
    # Seidel boustrophedon: row n holds Entringer numbers, its last entry is E_n.
    out = [1]
    row = [1]
    for n in range(1, n_max + 1):
        new = [0]
        for k in range(1, n + 1):
            new.append(new[k - 1] + row[n - k])
        row = new
        out.append(row[-1])
    return tuple(out)


def euler_numbers(n_max: int) -> EulerTable:
    if not 0 <= n_max <= MAX_EULER:
        raise CapacityError(f"n_max must be in [0, {MAX_EULER}]")
    return EulerTable(_euler_upto(n_max))


def euler_number(n: int) -> int:
    return euler_numbers(max(n, 0))[n]


# -- lattice counts ---------------------------------------------------


def fib_count(n: int, t: int) -> int:
    """#{x in Z^n : 0 <= x_i <= t, x_i + x_{i+1} <= t}."""
    if n == 0:
        return 1
    if t < 0:
        return 0
    cnt = [1] * (t + 1)  # cnt[v]: sequences so far ending in value v
    for _ in range(n - 1):
        # next value w needs previous v <= t - w: a prefix sum
        pre = [0]
        for c in cnt:
            pre.append(pre[-1] + c)
        cnt = [pre[t - w + 1] for w in range(t + 1)]
    return sum(cnt)


def efib_count(n: int, t: int) -> int:
    """#{x in Z^n : |x_i| <= t, |x_i| + |x_{i+1}| <= t}."""
    if n == 0:
        return 1
    if t < 0:
        return 0
    # states indexed by a = |x_i|; value a has 1 (a=0) or 2 representatives
    mult = [1] + [2] * t
    cnt = list(mult)
    for _ in range(n - 1):
        pre = [0]
        for c in cnt:
            pre.append(pre[-1] + c)
        cnt = [mult[a] * pre[t - a + 1] for a in range(t + 1)]
    return sum(cnt)


def _check_fib(n: int) -> None:
    if n < 0:
        raise ValueError("n must be >= 0")
    if n > MAX_FIB_N:
        raise CapacityError(f"n must be <= {MAX_FIB_N}")


@lru_cache(maxsize=None)
def fib_ehrhart(n: int) -> Poly:
    _check_fib(n)
    return interpolate([(t, fib_count(n, t)) for t in range(n + 3)], n)


@lru_cache(maxsize=None)
def efib_ehrhart(n: int) -> Poly:
    _check_fib(n)
    return interpolate([(t, efib_count(n, t)) for t in range(n + 3)], n)


# -- Hilbert-Kunz multiplicity ----------------------------------------


@dataclass(frozen=True)
class HKReport:
    p: int
    n: int
    fib_value: Fraction
    efib_value: Fraction
    e_hk: Fraction
    bound: Fraction

    @property
    def margin(self) -> Fraction:
        return self.e_hk - self.bound

    @property
    def satisfied(self) -> bool:
        return self.e_hk >= self.bound


def hk_bound(n: int) -> Fraction:
    return 1 + Fraction(euler_number(n), factorial(n))


def e_hk(p: int, n: int) -> HKReport:
    """e_HK(A_{p,n}) = 1 + 2^n Fib_n((p-3)/2) / (p^n - EFib_{n-2}((p-1)/2))."""
    if p < 3 or p % 2 == 0:
        raise ValueError(f"p must be an odd integer >= 3, got {p}")
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    fib = fib_ehrhart(n)((p - 3) // 2)
    efib = efib_ehrhart(n - 2)((p - 1) // 2)
    den = p**n - efib
    if den <= 0:
        raise IntegrityError(f"nonpositive denominator {den} at p={p}, n={n}")
    value = 1 + 2**n * fib / den
    return HKReport(p, n, Fraction(fib), Fraction(efib), value, hk_bound(n))


@dataclass
class WYReport:
    rows: list[HKReport]

    @property
    def ok(self) -> bool:
        return all(r.satisfied for r in self.rows)

    def equality_cases(self) -> list[tuple[int, int]]:
        return [(r.p, r.n) for r in self.rows if r.margin == 0]

    def failures(self) -> list[HKReport]:
        return [r for r in self.rows if not r.satisfied]


def verify_wy(p_list, n_range) -> WYReport:
    """e_hk over the grid, rows sorted by (n, p)."""
    ns = sorted(set(n_range))
    ps = sorted(set(p_list))
    if ns and not (2 <= ns[0] and ns[-1] <= MAX_WY_N):
        raise ValueError(f"n must lie in [2, {MAX_WY_N}]")
    return WYReport([e_hk(p, n) for n in ns for p in ps])


def lower_bound_gap(p: int, n: int) -> Fraction:
    """Omega(Z_n; p/2 - 1/2) - (E_n/n!) (p/2)^n, exactly."""
    om = order_poly_minor_recursion(n).poly(Fraction(p - 1, 2))
    return om - Fraction(euler_number(n), factorial(n)) * Fraction(p, 2) ** n
