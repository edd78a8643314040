"""Finite posets, zigzag and crown posets, order ideals, linear extensions,
and decompositions of zigzags into contiguous blocks.

Elements are labelled ``1..n`` in the public API. Internally a subset of
elements is an int bitmask where bit ``i - 1`` stands for element ``i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

from .errors import CapacityError, IntegrityError

MAX_LINEAR_EXTENSION_SIZE = 12


@dataclass(frozen=True)
class Poset:
    """Poset on ``1..n`` generated by ``covers``; ``(a, b)`` means a is below b."""

    n: int
    covers: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("poset size must be non-negative")
        covers = tuple(sorted({(int(a), int(b)) for a, b in self.covers}))
        for a, b in covers:
            if not (1 <= a <= self.n and 1 <= b <= self.n):
                raise ValueError(f"cover ({a}, {b}) out of range 1..{self.n}")
            if a == b:
                raise ValueError(f"self-cover on element {a}")
        object.__setattr__(self, "covers", covers)
        # forces the closure computation, which rejects cycles
        self.down_masks

    # -- order relation ---------------------------------------------------
    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        """``down_masks[i]``: bitmask of elements strictly below element i+1."""
        below = [0] * self.n
        for a, b in self.covers:
            below[b - 1] |= 1 << (a - 1)
        # Warshall-style closure on bitmasks
        changed = True
        while changed:
            changed = False
            for i in range(self.n):
                acc = below[i]
                m = acc
                while m:
                    low = m & -m
                    acc |= below[low.bit_length() - 1]
                    m ^= low
                if acc != below[i]:
                    below[i] = acc
                    changed = True
        for i in range(self.n):
            if below[i] >> i & 1:
                raise ValueError("cover relation has a cycle")
        return tuple(below)

    def leq(self, a: int, b: int) -> bool:
        return a == b or bool(self.down_masks[b - 1] >> (a - 1) & 1)

    def maximal(self) -> list[int]:
        has_above = 0
        for a, _ in self.covers:
            has_above |= 1 << (a - 1)
        return [i for i in range(1, self.n + 1) if not has_above >> (i - 1) & 1]

    def minimal(self) -> list[int]:
        return [i for i in range(1, self.n + 1) if not self.down_masks[i - 1]]

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_ideal(self, mask: int) -> bool:
        m = mask
        while m:
            low = m & -m
            if self.down_masks[low.bit_length() - 1] & ~mask:
                return False
            m ^= low
        return True

    def induced(self, elements: Sequence[int]) -> "Poset":
        """Induced subposet on ``elements`` relabelled 1..m in increasing order."""
        elems = sorted(elements)
        pos = {e: i + 1 for i, e in enumerate(elems)}
        covers = []
        for a in elems:
            for b in elems:
                if a != b and self.leq(a, b):
                    # keep only covers of the induced order
                    if not any(
                        c not in (a, b) and self.leq(a, c) and self.leq(c, b) for c in elems
                    ):
                        covers.append((pos[a], pos[b]))
        return Poset(len(elems), tuple(covers))

    def canonical_key(self) -> tuple:
        return (self.n, self.covers)

    # -- ideals -----------------------------------------------------------
    @cached_property
    def ideal_masks(self) -> tuple[int, ...]:
        """All order ideals (including the empty set and P), sorted by size then value."""
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for ideal in frontier:
                for i in range(self.n):
                    bit = 1 << i
                    if not ideal & bit and self.down_masks[i] & ~ideal == 0:
                        grown = ideal | bit
                        if grown not in seen:
                            seen.add(grown)
                            nxt.append(grown)
            frontier = nxt
        return tuple(sorted(seen, key=lambda m: (bin(m).count("1"), m)))

    def ideals(self) -> list[frozenset[int]]:
        return [mask_to_set(m) for m in self.ideal_masks]

    def to_json(self) -> dict:
        return {"n": self.n, "covers": [list(c) for c in self.covers]}

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        return cls(int(data["n"]), tuple(tuple(c) for c in data["covers"]))


def mask_to_set(mask: int) -> frozenset[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


def set_to_mask(elements) -> int:
    m = 0
    for e in elements:
        m |= 1 << (e - 1)
    return m


def zigzag(n: int) -> Poset:
    """Zigzag z_1 > z_2 < z_3 > ...: even-indexed elements are below their neighbours."""
    if n < 1:
        raise ValueError("zigzag needs n >= 1")
    covers = []
    for j in range(2, n + 1, 2):
        covers.append((j, j - 1))
        if j + 1 <= n:
            covers.append((j, j + 1))
    return Poset(n, tuple(covers))


def crown(two_n: int) -> Poset:
    """Even zigzag closed into a cycle by the extra cover z_{2n} below z_1."""
    if two_n < 4 or two_n % 2:
        raise ValueError("crown needs an even size >= 4")
    z = zigzag(two_n)
    return Poset(two_n, z.covers + ((two_n, 1),))


def chain(n: int) -> Poset:
    return Poset(n, tuple((i, i + 1) for i in range(1, n)))


def antichain(n: int) -> Poset:
    return Poset(n, ())


def linear_extension_count(p: Poset) -> int:
    """e(P) by dynamic programming over the lattice of order ideals."""
    if p.n > MAX_LINEAR_EXTENSION_SIZE:
        raise CapacityError(
            f"linear_extension_count supports at most {MAX_LINEAR_EXTENSION_SIZE} elements"
        )
    count = {0: 1}
    for ideal in p.ideal_masks[1:]:
        total = 0
        m = ideal
        while m:
            low = m & -m
            rest = ideal ^ low
            # smaller ideals are already in the table; non-ideals never are
            if rest in count:
                total += count[rest]
            m ^= low
        count[ideal] = total
    return count[p.full_mask]


@dataclass(frozen=True)
class IdealChain:
    """Strictly increasing chain of ideals, the empty ideal omitted: I_1 < ... < I_k = P."""

    ideals: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.ideals)

    def blocks(self) -> list[frozenset[int]]:
        prev: frozenset[int] = frozenset()
        out = []
        for ideal in self.ideals:
            out.append(ideal - prev)
            prev = ideal
        return out


def ideal_chain_masks(p: Poset, k: int) -> Iterator[tuple[int, ...]]:
    """Bitmask form of :func:`ideal_chains`."""
    if not 1 <= k <= p.n:
        raise ValueError(f"need 1 <= k <= {p.n}")
    ideals = p.ideal_masks
    full = p.full_mask
    supersets = {
        a: [b for b in ideals if b != a and a & b == a] for a in ideals
    }

    def rec(current: int, remaining: int, acc: tuple[int, ...]):
        if remaining == 1:
            yield acc + (full,)
            return
        for nxt in supersets[current]:
            # each later step must add at least one element
            if nxt != full and p.n - bin(nxt).count("1") >= remaining - 1:
                yield from rec(nxt, remaining - 1, acc + (nxt,))

    yield from rec(0, k, ())


def ideal_chains(p: Poset, k: int) -> Iterator[IdealChain]:
    """All chains {} < I_1 < ... < I_k = P of order ideals.

    Each chain is one labelled standard decomposition, with blocks I_j - I_{j-1}.
    """
    for masks in ideal_chain_masks(p, k):
        yield IdealChain(tuple(mask_to_set(m) for m in masks))


# -- decompositions of zigzags -------------------------------------------


class BlockKind(enum.Enum):
    EVEN = "e"
    ODD_UP = "u"  # starts (and ends) on a maximal element
    ODD_DOWN = "d"  # starts on a minimal element
    ODD_DOWN_SPECIAL = "s"  # odd-down block holding z_n when n is even

    @property
    def label(self) -> str:
        return self.name.lower().replace("_", "-")


@dataclass(frozen=True)
class Block:
    start: int
    end: int
    kind: BlockKind

    @property
    def size(self) -> int:
        return self.end - self.start + 1


def classify_block(n: int, start: int, end: int, *, allow_special: bool = True) -> BlockKind:
    m = end - start + 1
    if m % 2 == 0:
        return BlockKind.EVEN
    if start % 2 == 1:
        return BlockKind.ODD_UP
    if allow_special and n % 2 == 0 and end == n:
        return BlockKind.ODD_DOWN_SPECIAL
    return BlockKind.ODD_DOWN


@dataclass(frozen=True)
class Decomposition:
    """Composition of Z_n into consecutive interval blocks."""

    n: int
    parts: tuple[int, ...]
    blocks: tuple[Block, ...] = field(compare=False)

    @classmethod
    def from_parts(cls, n: int, parts: Sequence[int]) -> "Decomposition":
        parts = tuple(parts)
        if sum(parts) != n or any(m < 1 for m in parts):
            raise ValueError(f"{parts} is not a composition of {n}")
        blocks = []
        start = 1
        for m in parts:
            end = start + m - 1
            blocks.append(Block(start, end, classify_block(n, start, end)))
            start = end + 1
        return cls(n, parts, tuple(blocks))

    @property
    def k(self) -> int:
        return len(self.parts)

    def text(self, verbose: bool = False) -> str:
        if verbose:
            return "+".join(f"{b.size}{b.kind.value}" for b in self.blocks)
        return "+".join(str(m) for m in self.parts)

    def __str__(self) -> str:
        return self.text()


def compositions(n: int, k: int, odd_only: bool = False) -> Iterator[tuple[int, ...]]:
    """Compositions of n into k positive parts, in lexicographic order."""
    if k == 0:
        if n == 0:
            yield ()
        return
    step = 2 if odd_only else 1
    for first in range(1, n - (k - 1) + 1, step):
        for rest in compositions(n - first, k - 1, odd_only):
            yield (first,) + rest


def interval_decompositions(n: int, k: int) -> list[Decomposition]:
    return [Decomposition.from_parts(n, c) for c in compositions(n, k)]


def odd_decompositions(n: int, k: int) -> list[Decomposition]:
    """Decompositions of Z_n into k blocks of odd size (empty when n, k differ in parity)."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return [Decomposition.from_parts(n, c) for c in compositions(n, k, odd_only=True)]


def block_poset(d: Decomposition) -> Poset:
    """Order on the blocks induced by the cover relations crossing block boundaries."""
    covers = []
    for j in range(d.k - 1):
        left = d.blocks[j].end
        # z_left is maximal iff left is odd, then it sits above z_{left+1}
        if left % 2 == 1:
            covers.append((j + 2, j + 1))
        else:
            covers.append((j + 1, j + 2))
    try:
        return Poset(d.k, tuple(covers))
    except ValueError as exc:  # pragma: no cover - impossible for interval blocks
        raise IntegrityError(f"block relation of {d} is cyclic") from exc


def block_poset_extensions(d: Decomposition) -> int:
    """e(mu): linear extensions of the block poset of a zigzag decomposition."""
    return linear_extension_count(block_poset(d))


# -- cyclic decompositions of crowns -------------------------------------


@dataclass(frozen=True)
class CyclicDecomposition:
    """Partition of the crown C_{2n} into k cyclic arcs; ``arcs`` are (start, size)."""

    two_n: int
    arcs: tuple[tuple[int, int], ...]

    def text(self) -> str:
        return "+".join(f"{m}@{s}" for s, m in self.arcs)


def crown_odd_decompositions(two_n: int, k: int) -> list[CyclicDecomposition]:
    """Partitions of the cycle 1..2n into k arcs of odd size.

    Each partition is produced once: the arc holding element 1 is enumerated
    together with its offset, and the remaining arcs follow clockwise.
    """
    if two_n < 4 or two_n % 2:
        raise ValueError("crown needs an even size >= 4")
    if not 1 <= k <= two_n:
        raise ValueError(f"need 1 <= k <= {two_n}")
    out = []
    for parts in compositions(two_n, k, odd_only=True):
        for offset in range(parts[0]):
            start = (-offset) % two_n + 1
            arcs = []
            for m in parts:
                arcs.append((start, m))
                start = (start + m - 1) % two_n + 1
            out.append(CyclicDecomposition(two_n, tuple(arcs)))
    return out
