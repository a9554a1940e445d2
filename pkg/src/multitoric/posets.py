"""Finite posets, comparability graphs and multichain families.

Element indices are 0-based in the Python API; the text formats and all
human-readable output use the 1-based names ``x1, ..., xn``.  Relations are
kept as bitmasks: bit ``j`` of ``below[i]`` is set iff ``x_j < x_i``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterator, Sequence

from .errors import CycleDetected, IndexOutOfRange, InvalidOrderHint, SizeLimitExceeded
from .graphs import Graph

MAX_ENUMERATION_SIZE = 6


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Poset:
    """A strict partial order on ``{0, ..., n-1}``."""

    n: int
    below: tuple[int, ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"x{i + 1}" for i in range(self.n)))

    @classmethod
    def from_lt(cls, lt: Sequence[Sequence[bool]], labels: Sequence[str] = ()) -> "Poset":
        """Build from a boolean matrix with ``lt[i][j]`` meaning ``x_i < x_j``."""
        n = len(lt)
        below = [0] * n
        for i in range(n):
            for j in range(n):
                if lt[i][j]:
                    below[j] |= 1 << i
        P = cls(n, tuple(below), tuple(labels))
        P.check()
        return P

    def check(self):
        """Raise CycleDetected unless the relation is irreflexive and transitive."""
        for i in range(self.n):
            if self.below[i] >> i & 1:
                raise CycleDetected(f"x{i + 1} < x{i + 1}")
            for j in _bits(self.below[i]):
                if self.below[j] & ~self.below[i]:
                    raise ValueError("relation is not transitive")
                if self.below[j] >> i & 1:
                    raise CycleDetected(f"x{i + 1} and x{j + 1} are mutually below each other")

    @property
    def above(self) -> tuple[int, ...]:
        up = [0] * self.n
        for i in range(self.n):
            for j in _bits(self.below[i]):
                up[j] |= 1 << i
        return tuple(up)

    def lt(self, i: int, j: int) -> bool:
        return bool(self.below[j] >> i & 1)

    def leq(self, i: int, j: int) -> bool:
        return i == j or self.lt(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return self.lt(i, j) or self.lt(j, i)

    @property
    def lt_matrix(self) -> tuple[tuple[bool, ...], ...]:
        return tuple(tuple(self.lt(i, j) for j in range(self.n)) for i in range(self.n))

    @property
    def covers(self) -> list[tuple[int, int]]:
        """Pairs ``(i, j)`` with ``x_i < x_j`` and nothing strictly between."""
        out = []
        for j in range(self.n):
            for i in _bits(self.below[j]):
                if not any(self.below[k] >> i & 1 for k in _bits(self.below[j])):
                    out.append((i, j))
        return sorted(out)

    def comparability_masks(self) -> tuple[int, ...]:
        """Bit ``j`` of entry ``i`` is set iff ``x_i`` and ``x_j`` are comparable or equal."""
        up = self.above
        return tuple(self.below[i] | up[i] | (1 << i) for i in range(self.n))

    def relabel(self, order: Sequence[int]) -> "Poset":
        """The poset whose element ``k`` is the old element ``order[k]``."""
        order = list(order)
        if sorted(order) != list(range(self.n)):
            raise InvalidOrderHint(f"{order} is not a permutation of 0..{self.n - 1}")
        pos = {old: new for new, old in enumerate(order)}
        below = [0] * self.n
        for new, old in enumerate(order):
            for j in _bits(self.below[old]):
                below[new] |= 1 << pos[j]
        return Poset(self.n, tuple(below), tuple(self.labels[o] for o in order))

    def components(self) -> list[list[int]]:
        """Connected components of the comparability graph."""
        return self.comparability_graph().components()

    def comparability_graph(self) -> Graph:
        return comparability_graph(self)

    def is_chain(self) -> bool:
        full = (1 << self.n) - 1
        return all(m == full for m in self.comparability_masks())

    def encode(self) -> tuple[int, ...]:
        return self.below

    def __str__(self):
        rel = ", ".join(f"{self.labels[i]}<{self.labels[j]}" for i, j in self.covers)
        return f"Poset(n={self.n}; {rel or 'antichain'})"


def poset_from_covers(n: int, covers: Sequence[tuple[int, int]], labels: Sequence[str] = ()) -> Poset:
    """Transitive closure of cover pairs ``(i, j)`` meaning ``x_i < x_j`` (0-based)."""
    below = [0] * n
    for i, j in covers:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexOutOfRange(f"cover ({i + 1}, {j + 1}) outside 1..{n}")
        if i == j:
            raise CycleDetected(f"cover x{i + 1} < x{i + 1}")
        below[j] |= 1 << i
    # closure until stable
    changed = True
    while changed:
        changed = False
        for j in range(n):
            acc = below[j]
            for i in _bits(below[j]):
                acc |= below[i]
            if acc != below[j]:
                below[j] = acc
                changed = True
    for i in range(n):
        if below[i] >> i & 1:
            raise CycleDetected(f"the cover relation has a directed cycle through x{i + 1}")
    return Poset(n, tuple(below), tuple(labels))


def chain_poset(n: int) -> Poset:
    return poset_from_covers(n, [(i, i + 1) for i in range(n - 1)])


def antichain_poset(n: int) -> Poset:
    return Poset(n, (0,) * n)


def disjoint_union(P: Poset, Q: Poset) -> Poset:
    below = list(P.below) + [b << P.n for b in Q.below]
    return Poset(P.n + Q.n, tuple(below))


def comparability_graph(P: Poset) -> Graph:
    up = P.above
    return Graph(P.n, tuple(P.below[i] | up[i] for i in range(P.n)))


@dataclass(frozen=True)
class Multichain:
    """A multiset of pairwise comparable elements, stored as sorted indices."""

    elems: tuple[int, ...]
    n: int

    @property
    def rho(self) -> tuple[int, ...]:
        v = [0] * self.n
        for i in self.elems:
            v[i] += 1
        return tuple(v)

    @property
    def d(self) -> int:
        return len(self.elems)

    def is_valid(self, P: Poset) -> bool:
        if list(self.elems) != sorted(self.elems):
            return False
        support = sorted(set(self.elems))
        return all(P.comparable(a, b) for a, b in itertools.combinations(support, 2))

    def name(self, labels: Sequence[str] | None = None) -> str:
        if labels is None:
            return "".join(f"x{i + 1}" for i in self.elems)
        return "".join(labels[i] for i in self.elems)

    def var_name(self) -> str:
        return "y_{" + "".join(str(i + 1) for i in self.elems) + "}"


@dataclass(frozen=True)
class MultichainFamily:
    """``M_d(P)`` (or the strict-chain variant) in decreasing-lex order of rho."""

    poset: Poset
    d: int
    members: tuple[Multichain, ...]
    relabeling: tuple[int, ...] | None = None
    strict: bool = False
    _index: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def m(self) -> int:
        return len(self.members)

    def columns(self) -> list[tuple[int, ...]]:
        return [c.rho for c in self.members]

    def index_of(self, elems: Sequence[int]) -> int:
        if not self._index:
            self._index.update({c.elems: k for k, c in enumerate(self.members)})
        return self._index[tuple(sorted(elems))]

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def _sorted_family(P, d, seqs, relabeling, strict):
    members = [Multichain(tuple(s), P.n) for s in seqs]
    members.sort(key=lambda c: c.rho, reverse=True)
    return MultichainFamily(P, d, tuple(members), relabeling, strict)


def enumerate_multichains(P: Poset, d: int, order_hint: Sequence[int] | None = None) -> MultichainFamily:
    """All multichains of length ``d - 1`` (multisets of size ``d``).

    With ``order_hint`` the poset is first relabeled so that new element ``k``
    is the old element ``order_hint[k]``.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    relabeling = None
    if order_hint is not None:
        relabeling = tuple(order_hint)
        P = P.relabel(order_hint)
    comp = P.comparability_masks()
    full = (1 << P.n) - 1
    seqs = []

    def extend(seq, allowed, start):
        if len(seq) == d:
            seqs.append(tuple(seq))
            return
        for j in range(start, P.n):
            if allowed >> j & 1:
                seq.append(j)
                extend(seq, allowed & comp[j], j)
                seq.pop()

    extend([], full, 0)
    return _sorted_family(P, d, seqs, relabeling, False)


def enumerate_strict_chains(P: Poset, d: int) -> MultichainFamily:
    """Chains of ``d`` distinct pairwise comparable elements."""
    if d < 2:
        raise ValueError("d must be at least 2")
    comp = P.comparability_masks()
    seqs = []

    def extend(seq, allowed, start):
        if len(seq) == d:
            seqs.append(tuple(seq))
            return
        for j in range(start, P.n):
            if allowed >> j & 1:
                seq.append(j)
                extend(seq, allowed & comp[j] & ~(1 << j), j + 1)
                seq.pop()

    extend([], (1 << P.n) - 1, 0)
    return _sorted_family(P, d, seqs, None, True)


def count_multichains(P: Poset, d: int) -> int:
    """Size of ``M_d(P)`` by dynamic programming over chains.

    A multiset of size ``d`` supported on a chain of ``k`` elements is a
    composition of ``d`` into ``k`` positive parts.
    """
    n = P.n
    # ending[k][x]: chains with k elements whose top is x
    ending = [[0] * n for _ in range(n + 1)]
    for x in range(n):
        ending[1][x] = 1
    for k in range(2, n + 1):
        for x in range(n):
            ending[k][x] = sum(ending[k - 1][y] for y in _bits(P.below[x]))
    return sum(comb(d - 1, k - 1) * sum(ending[k]) for k in range(1, min(n, d) + 1))


def enumerate_posets(n: int) -> Iterator[Poset]:
    """Every labeled poset on ``n`` elements, each exactly once.

    Posets on ``n`` elements are extensions of posets on the first ``n - 1``
    elements by a new top-index element with a down-set ``D`` below it and an
    up-set ``U`` above it, subject to ``D < U`` elementwise.
    """
    if n > MAX_ENUMERATION_SIZE:
        raise SizeLimitExceeded(f"poset enumeration is limited to n <= {MAX_ENUMERATION_SIZE}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    for below in _poset_masks(n):
        yield Poset(n, below)


def _poset_masks(n: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    k = n - 1
    for below in _poset_masks(k):
        above = [0] * k
        for i in range(k):
            for j in _bits(below[i]):
                above[j] |= 1 << i
        downsets, upsets = [], []
        for S in range(1 << k):
            if all(below[i] & ~S == 0 for i in _bits(S)):
                downsets.append(S)
            if all(above[i] & ~S == 0 for i in _bits(S)):
                upsets.append(S)
        for D in downsets:
            # every element of U must lie above every element of D
            common_up = (1 << k) - 1
            for i in _bits(D):
                common_up &= above[i]
            for U in upsets:
                if U & D or U & ~common_up:
                    continue
                new_below = list(below)
                for u in _bits(U):
                    new_below[u] |= 1 << k
                new_below.append(D)
                yield tuple(new_below)


def canonical_form(P: Poset) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Minimum relation encoding over all relabelings, with a permutation attaining it.

    Returns ``(key, order)`` where ``P.relabel(order).below == key``.
    """
    best, best_order = None, None
    # relabel within blocks of equal (|below|, |above|) signature only
    up = P.above
    sig = [(bin(P.below[i]).count("1"), bin(up[i]).count("1")) for i in range(P.n)]
    classes = sorted(set(sig))
    blocks = [[i for i in range(P.n) if sig[i] == s] for s in classes]
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        order = [i for part in parts for i in part]
        key = P.relabel(order).below
        if best is None or key < best:
            best, best_order = key, tuple(order)
    return best, best_order
