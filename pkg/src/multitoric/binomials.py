"""Gröbner bases of pure-difference binomial ideals.

A binomial ``y^u - y^v`` is stored as the pair of exponent vectors ``(u, v)``;
coefficients never appear because every S-binomial and every reduction step
of pure differences is again a pure difference.

Internally monomials are packed into Python integers, one 16-bit field per
variable, so that divisibility, lcm and the monomial order become a handful of
integer operations.  The packing puts the variable that matters most for the
order in the most significant field.
"""
from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import InhomogeneousRevlex

Monomial = tuple[int, ...]

LESS, EQUAL, GREATER = -1, 0, 1

_KINDS = ("lex", "grevlex", "revlex")


@dataclass(frozen=True)
class PureBinomial:
    """``y^plus - y^minus``.  In a Gröbner basis ``plus`` is the initial side."""

    plus: Monomial
    minus: Monomial

    def __post_init__(self):
        plus, minus = tuple(self.plus), tuple(self.minus)
        object.__setattr__(self, "plus", plus)
        object.__setattr__(self, "minus", minus)
        if len(plus) != len(minus):
            raise ValueError("binomial sides have different numbers of variables")
        if any(e < 0 for e in plus) or any(e < 0 for e in minus):
            raise ValueError("negative exponent in binomial")
        if plus == minus:
            raise ValueError("zero binomial")

    @classmethod
    def from_vector(cls, b: Sequence[int]) -> "PureBinomial":
        """The binomial ``y^{b+} - y^{b-}`` of an integer vector."""
        return cls(tuple(max(x, 0) for x in b), tuple(max(-x, 0) for x in b))

    @property
    def nvars(self) -> int:
        return len(self.plus)

    @property
    def degree(self) -> int:
        return max(sum(self.plus), sum(self.minus))

    @property
    def vector(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    def is_homogeneous(self) -> bool:
        return sum(self.plus) == sum(self.minus)

    def is_coprime(self) -> bool:
        return all(a == 0 or b == 0 for a, b in zip(self.plus, self.minus))

    def swapped(self) -> "PureBinomial":
        return PureBinomial(self.minus, self.plus)

    def oriented(self, order: "MonomialOrder") -> "PureBinomial":
        """Return the binomial with its initial monomial as ``plus``."""
        if compare(order, self.plus, self.minus) == LESS:
            return self.swapped()
        return self

    def to_json(self) -> dict:
        return {"plus": list(self.plus), "minus": list(self.minus), "initial": "plus"}

    @classmethod
    def from_json(cls, obj: dict) -> "PureBinomial":
        b = cls(tuple(obj["plus"]), tuple(obj["minus"]))
        return b.swapped() if obj.get("initial", "plus") == "minus" else b


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on ``m`` variables.

    ``ranking`` lists the variable indices from largest to smallest.  ``revlex``
    is the reverse lexicographic order restricted to monomials of equal degree
    (comparing different degrees raises); ``grevlex`` compares degree first.
    Optional ``weights`` are compared before the base order.
    """

    kind: str
    ranking: tuple[int, ...]
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown order kind {self.kind!r}")
        ranking = tuple(self.ranking)
        if sorted(ranking) != list(range(len(ranking))):
            raise ValueError("ranking must be a permutation of the variables")
        object.__setattr__(self, "ranking", ranking)
        if self.weights is not None:
            if len(self.weights) != len(ranking) or any(w < 0 for w in self.weights):
                raise ValueError("weights must be nonnegative, one per variable")
            object.__setattr__(self, "weights", tuple(self.weights))

    @classmethod
    def lex(cls, m: int, ranking: Sequence[int] | None = None) -> "MonomialOrder":
        return cls("lex", tuple(range(m)) if ranking is None else tuple(ranking))

    @classmethod
    def grevlex(cls, m: int, ranking: Sequence[int] | None = None) -> "MonomialOrder":
        return cls("grevlex", tuple(range(m)) if ranking is None else tuple(ranking))

    @classmethod
    def revlex(cls, m: int, ranking: Sequence[int] | None = None) -> "MonomialOrder":
        return cls("revlex", tuple(range(m)) if ranking is None else tuple(ranking))

    @classmethod
    def ascending_revlex(cls, m: int) -> "MonomialOrder":
        """Reverse lexicographic order induced by ``y_1 < y_2 < ... < y_m``."""
        return cls("revlex", tuple(range(m - 1, -1, -1)))

    @classmethod
    def with_last(cls, m: int, k: int) -> "MonomialOrder":
        """grevlex in which ``y_k`` is the smallest variable."""
        return cls("grevlex", tuple(i for i in range(m) if i != k) + (k,))

    @property
    def nvars(self) -> int:
        return len(self.ranking)

    def key(self, mono: Sequence[int]):
        """Sort key: ``key(a) < key(b)`` iff ``a < b``."""
        if self.kind == "lex":
            k = tuple(mono[v] for v in self.ranking)
        else:
            k = tuple(-mono[v] for v in reversed(self.ranking))
            if self.kind == "grevlex":
                k = (sum(mono),) + k
        if self.weights is not None:
            k = (sum(w * e for w, e in zip(self.weights, mono)),) + k
        return k

    def describe(self) -> str:
        names = " > ".join(f"y_{v + 1}" for v in self.ranking)
        w = "" if self.weights is None else f" weights={list(self.weights)}"
        return f"{self.kind} ({names}){w}"

    def to_json(self) -> dict:
        return {"kind": self.kind, "ranking": list(self.ranking),
                "weights": None if self.weights is None else list(self.weights)}


def compare(order: MonomialOrder, a: Sequence[int], b: Sequence[int]) -> int:
    """Return LESS, EQUAL or GREATER comparing ``y^a`` with ``y^b``."""
    if len(a) != order.nvars or len(b) != order.nvars:
        raise ValueError("monomial length does not match the order")
    if order.kind == "revlex" and sum(a) != sum(b):
        if order.weights is None or _dot(order.weights, a) == _dot(order.weights, b):
            raise InhomogeneousRevlex(
                f"revlex comparison of degrees {sum(a)} and {sum(b)}")
    ka, kb = order.key(a), order.key(b)
    return LESS if ka < kb else GREATER if ka > kb else EQUAL


def _dot(w, e):
    return sum(x * y for x, y in zip(w, e))


class _Packing:
    """Bit-packed monomial arithmetic for one order."""

    WIDTH = 16

    def __init__(self, order: MonomialOrder):
        m = order.nvars
        w = self.WIDTH
        self.m = m
        self.order = order
        if order.kind == "lex":
            seq = order.ranking
        else:
            seq = tuple(reversed(order.ranking))
        # variable -> bit offset; seq[0] sits in the most significant field
        self.shift = [0] * m
        for pos, v in enumerate(seq):
            self.shift[v] = w * (m - 1 - pos)
        self.field = (1 << w) - 1
        self.half = 1 << (w - 1)
        self.H = sum(self.half << (w * i) for i in range(m))
        self.low = sum(1 << (w * i) for i in range(m))
        self.full = (1 << (w * m)) - 1
        kind = order.kind
        if order.weights is not None:
            ws = order.weights
            base = self._base_key(kind)
            self.key = lambda p: (_dot(ws, self.unpack(p)), base(p))
        else:
            self.key = self._base_key(kind)

    def _base_key(self, kind):
        if kind == "lex":
            return lambda p: p
        if kind == "revlex":
            return lambda p: -p
        F = self.field
        return lambda p: (p % F, -p)

    def pack(self, mono: Sequence[int]) -> int:
        p = 0
        for v, e in enumerate(mono):
            if e:
                if e >= self.half:
                    raise OverflowError("exponent exceeds packed field width")
                p |= e << self.shift[v]
        return p

    def unpack(self, p: int) -> Monomial:
        F = self.field
        return tuple((p >> s) & F for s in self.shift)

    def check(self, p: int) -> int:
        if p & self.H:
            raise OverflowError("exponent exceeds packed field width")
        return p

    def divides(self, a: int, b: int) -> bool:
        H = self.H
        return ((b | H) - a) & H == H

    def lcm(self, a: int, b: int) -> int:
        t = ((a | self.H) - b) & self.H
        mask = (t >> (self.WIDTH - 1)) * self.field
        return (a & mask) | (b & ~mask & self.full)

    def support(self, a: int) -> int:
        return ((a | self.H) - self.low) & self.H

    def degree(self, p: int) -> int:
        # the fields sum to p modulo 2^16 - 1; degrees here stay far below that
        return p % self.field


class _Divisors:
    """Leading terms bucketed by their lowest nonzero field, for fast division."""

    def __init__(self, pk: _Packing, elems: Iterable[tuple[int, int]] = ()):
        self.H = pk.H
        self.low = pk.low
        self.buckets: dict[int, list[tuple[int, int]]] = {}
        for lead, trail in elems:
            self.add(lead, trail)

    def add(self, lead: int, trail: int):
        nz = ((lead | self.H) - self.low) & self.H
        self.buckets.setdefault(nz & -nz, []).append((lead, trail))

    def discard(self, lead: int):
        nz = ((lead | self.H) - self.low) & self.H
        key = nz & -nz
        self.buckets[key] = [lt for lt in self.buckets[key] if lt[0] != lead]

    def reduce(self, u: int) -> int:
        """Normal form of the packed monomial ``u``."""
        H, low, buckets = self.H, self.low, self.buckets
        while True:
            uH = u | H
            nz = (uH - low) & H
            hit = None
            while nz:
                b = nz & -nz
                nz ^= b
                for lead, trail in buckets.get(b, ()):
                    if (uH - lead) & H == H:
                        hit = (lead, trail)
                        break
                if hit is not None:
                    break
            if hit is None:
                return u
            u = u - hit[0] + hit[1]
            if u & H:
                raise OverflowError("exponent exceeds packed field width")


@dataclass(frozen=True)
class ReducedGB:
    """A reduced Gröbner basis; each element has its initial monomial as ``plus``."""

    basis: tuple[PureBinomial, ...]
    order: MonomialOrder
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(sorted(self.basis, key=lambda g: self.order.key(g.plus))))

    def __len__(self):
        return len(self.basis)

    def __iter__(self) -> Iterator[PureBinomial]:
        return iter(self.basis)

    def __eq__(self, other):
        if not isinstance(other, ReducedGB):
            return NotImplemented
        return self.order == other.order and set(self.basis) == set(other.basis)

    def __hash__(self):
        return hash((self.order, frozenset(self.basis)))

    @property
    def max_degree(self) -> int:
        return max((g.degree for g in self.basis), default=0)

    def initial_monomials(self) -> list[Monomial]:
        return [g.plus for g in self.basis]

    def _packed(self):
        cached = self.stats.get("_packed")
        if cached is None:
            pk = _Packing(self.order)
            cached = (pk, _Divisors(pk, [(pk.pack(g.plus), pk.pack(g.minus)) for g in self.basis]))
            self.stats["_packed"] = cached
        return cached

    def reduce_monomial(self, mono: Sequence[int]) -> Monomial:
        pk, div = self._packed()
        return pk.unpack(div.reduce(pk.pack(mono)))

    def contains(self, b: PureBinomial) -> bool:
        """Ideal membership of a binomial."""
        pk, div = self._packed()
        return div.reduce(pk.pack(b.plus)) == div.reduce(pk.pack(b.minus))

    def to_json(self) -> list:
        return [g.to_json() for g in self.basis]


def _as_oriented(gb, order: MonomialOrder) -> list[PureBinomial]:
    if isinstance(gb, ReducedGB):
        if gb.order != order:
            raise ValueError("basis was computed for a different order")
        return list(gb.basis)
    return [g.oriented(order) for g in gb]


def normal_form(f, gb, order: MonomialOrder):
    """Divide a monomial or binomial by a set of binomials.

    Returns a monomial tuple, a PureBinomial, or ``None`` for zero.
    """
    elems = _as_oriented(gb, order)
    pk = _Packing(order)
    div = _Divisors(pk, [(pk.pack(g.plus), pk.pack(g.minus)) for g in elems])
    if isinstance(f, PureBinomial):
        u = div.reduce(pk.pack(f.plus))
        v = div.reduce(pk.pack(f.minus))
        if u == v:
            return None
        return PureBinomial(pk.unpack(u), pk.unpack(v))
    return pk.unpack(div.reduce(pk.pack(f)))


def _check_homogeneous(gens: Sequence[PureBinomial], order: MonomialOrder):
    if order.kind != "revlex":
        return
    for g in gens:
        if not g.is_homogeneous() and (
                order.weights is None or _dot(order.weights, g.plus) == _dot(order.weights, g.minus)):
            raise InhomogeneousRevlex(f"revlex order used on inhomogeneous binomial {g}")


class _Engine:
    """Buchberger completion with the Gebauer–Möller pair criteria."""

    def __init__(self, pk: _Packing, strategy: str = "normal", seed: int | None = None):
        if strategy not in ("normal", "fifo", "random"):
            raise ValueError(f"unknown pair strategy {strategy!r}")
        self.pk = pk
        self.strategy = strategy
        self.rng = random.Random(seed)
        self.polys: list[tuple[int, int]] = []
        self.active: list[int] = []
        self.div = _Divisors(pk)
        self.pairs: dict[tuple[int, int], int] = {}
        self.pair_index: dict[int, set] = {}
        self.heap: list = []
        self.counter = 0
        self.reductions = 0
        self.zero_reductions = 0

    def _drop_pair(self, ab):
        l = self.pairs.pop(ab, None)
        if l is None:
            return None
        H = self.pk.H
        bits = ((l | H) - self.pk.low) & H
        while bits:
            b = bits & -bits
            bits ^= b
            self.pair_index[b].discard(ab)
        return l

    def _orient(self, u: int, v: int):
        key = self.pk.key
        return (u, v) if key(u) > key(v) else (v, u)

    def _pair_key(self, lcm: int):
        self.counter += 1
        if self.strategy == "normal":
            return (lcm % self.pk.field, lcm, self.counter)
        if self.strategy == "fifo":
            return (self.counter,)
        return (self.rng.random(), self.counter)

    def add(self, u: int, v: int):
        """Reduce ``y^u - y^v`` and insert it if nonzero."""
        u = self.div.reduce(u)
        v = self.div.reduce(v)
        if u == v:
            return False
        self._update(*self._orient(u, v))
        return True

    def _update(self, lead: int, trail: int):
        pk = self.pk
        H, full, field, shift = pk.H, pk.full, pk.field, pk.WIDTH - 1
        low = pk.low
        polys = self.polys
        h = len(polys)
        polys.append((lead, trail))
        lead_h = lead | H
        sh = ((lead_h) - low) & H
        # group the new pairs by lcm; a pair survives only if no other new
        # lcm properly divides its lcm, one survivor per lcm, and none at an
        # lcm shared with a coprime pair
        groups: dict[int, list] = {}
        for g in self.active:
            lg = polys[g][0]
            t = (lead_h - lg) & H
            mask = (t >> shift) * field
            l = (lead & mask) | (lg & ~mask & full)
            coprime = sh & (((lg | H) - low) & H) == 0
            groups.setdefault(l, []).append((g, coprime))
        accepted: dict[int, list[int]] = {}
        kept = []
        for l in sorted(groups, key=pk.degree):
            lH = l | H
            nz = (lH - low) & H
            redundant = False
            while nz and not redundant:
                b = nz & -nz
                nz ^= b
                for l2 in accepted.get(b, ()):
                    if (lH - l2) & H == H:
                        redundant = True
                        break
            if redundant:
                continue
            lz = ((lH - low) & H)
            accepted.setdefault(lz & -lz, []).append(l)
            members = groups[l]
            if not any(c for _, c in members):
                kept.append((members[-1][0], l, False))
        # chain criterion on old pairs
        # (only pairs whose lcm involves every variable of the new lead can
        # be divisible by it, so scan the smallest per-variable bucket)
        pairs = self.pairs
        index = self.pair_index
        bucket = None
        bits = sh
        while bits:
            b = bits & -bits
            bits ^= b
            cand = index.get(b)
            if not cand:
                bucket = ()
                break
            if bucket is None or len(cand) < len(bucket):
                bucket = cand
        doomed = []
        for ab in bucket or ():
            l = pairs[ab]
            if ((l | H) - lead) & H == H:
                a, b = ab
                if pk.lcm(polys[a][0], lead) != l and pk.lcm(lead, polys[b][0]) != l:
                    doomed.append(ab)
        for ab in doomed:
            self._drop_pair(ab)
        for g, l, coprime in kept:
            if not coprime:
                ab = (g, h)
                pairs[ab] = l
                bits = ((l | H) - low) & H
                while bits:
                    b = bits & -bits
                    bits ^= b
                    index.setdefault(b, set()).add(ab)
                heapq.heappush(self.heap, (self._pair_key(l), g, h))
        still = []
        for g in self.active:
            lg = polys[g][0]
            if ((lg | H) - lead) & H == H:
                self.div.discard(lg)
            else:
                still.append(g)
        self.active = still
        self.active.append(h)
        self.div.add(lead, trail)

    def run(self):
        reduce = self.div.reduce
        while self.heap:
            _, a, b = heapq.heappop(self.heap)
            l = self._drop_pair((a, b))
            if l is None:
                continue
            la, ta = self.polys[a]
            lb, tb = self.polys[b]
            u = self.pk.check(l - la + ta)
            v = self.pk.check(l - lb + tb)
            u = reduce(u)
            v = reduce(v)
            self.reductions += 1
            if u == v:
                self.zero_reductions += 1
                continue
            self._update(*self._orient(u, v))

    def reduced(self) -> list[tuple[int, int]]:
        # a lead never divides its own (smaller) trail, so reducing by the
        # whole basis is reducing by the others
        return [(self.polys[g][0], self.div.reduce(self.polys[g][1])) for g in self.active]


def buchberger(gens: Iterable[PureBinomial], order: MonomialOrder,
               strategy: str = "normal", seed: int | None = None) -> ReducedGB:
    """Reduced Gröbner basis of the ideal generated by ``gens``."""
    gens = list(gens)
    _check_homogeneous(gens, order)
    pk = _Packing(order)
    eng = _Engine(pk, strategy, seed)
    for g in gens:
        if g.nvars != order.nvars:
            raise ValueError("generator length does not match the order")
        eng.add(pk.pack(g.plus), pk.pack(g.minus))
    eng.run()
    basis = [PureBinomial(pk.unpack(l), pk.unpack(t)) for l, t in eng.reduced()]
    stats = {"pairs_reduced": eng.reductions, "zero_reductions": eng.zero_reductions}
    stats["_packed"] = (pk, _Divisors(pk, [(pk.pack(g.plus), pk.pack(g.minus)) for g in basis]))
    return ReducedGB(tuple(basis), order, stats)


def interreduce(elems: Iterable[PureBinomial], order: MonomialOrder) -> list[PureBinomial]:
    """Drop elements with a redundant initial monomial and reduce the trailing terms."""
    pk = _Packing(order)
    packed = []
    for g in elems:
        g = g.oriented(order)
        packed.append((pk.pack(g.plus), pk.pack(g.minus)))
    packed.sort(key=lambda lt: pk.key(lt[0]))
    minimal = []
    for i, (l, t) in enumerate(packed):
        if any(pk.divides(l2, l) and (l2 != l or j < i) for j, (l2, _) in enumerate(packed) if j != i):
            continue
        minimal.append((l, t))
    div = _Divisors(pk, minimal)
    out = []
    for l, t in minimal:
        t = div.reduce(t)
        if t != l:
            out.append(PureBinomial(pk.unpack(l), pk.unpack(t)))
    return out


def is_groebner_basis(elems: Iterable[PureBinomial], order: MonomialOrder):
    """Buchberger's criterion for an oriented set of binomials.

    Returns ``(True, None)`` or ``(False, (g, h))`` with a pair whose
    S-binomial does not reduce to zero.
    """
    elems = [g.oriented(order) for g in elems]
    pk = _Packing(order)
    basis = [(pk.pack(g.plus), pk.pack(g.minus)) for g in elems]
    div = _Divisors(pk, basis)
    for i in range(len(basis)):
        li, ti = basis[i]
        si = pk.support(li)
        for j in range(i + 1, len(basis)):
            lj, tj = basis[j]
            if si & pk.support(lj) == 0:
                continue
            l = pk.lcm(li, lj)
            u = div.reduce(pk.check(l - li + ti))
            v = div.reduce(pk.check(l - lj + tj))
            if u != v:
                return False, (elems[i], elems[j])
    return True, None


def initial_ideal_generators(gb: ReducedGB) -> list[Monomial]:
    """Minimal generators of the initial ideal (the initial monomials of ``gb``)."""
    return gb.initial_monomials()


def is_squarefree(mons: Iterable[Sequence[int]]) -> bool:
    return all(e <= 1 for mono in mons for e in mono)
