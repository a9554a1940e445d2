"""Normality of multichain toric rings, decided up to a degree bound.

A point ``z`` is a hole when it lies in the lattice ``ZA`` and in the cone
``Q>=0 A`` but is not a nonnegative integer combination of the columns.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import NotConnected
from .lattice import IntegerLattice, nonnegative_solution
from .posets import Poset, comparability_graph, enumerate_multichains
from .toric import Configuration, configuration_from_family

DEFAULT_T_MAX = 4


def is_disjoint_union_of_chains(P: Poset) -> bool:
    """Every connected component of ``G_P`` is a clique."""
    G = comparability_graph(P)
    for comp in G.components():
        mask = sum(1 << v for v in comp)
        if not G.is_clique(mask):
            return False
    return True


@dataclass
class GradedMonoidView:
    """Lattice, cone and monoid generated by the columns of a configuration."""

    config: Configuration
    lattice: IntegerLattice = field(init=False, repr=False)
    _layers: list = field(default_factory=list, init=False, repr=False)

    def __post_init__(self):
        A = self.config
        self.lattice = IntegerLattice([list(c) for c in A.columns], A.n)
        if any(x < 0 for c in A.columns for x in c):
            raise ValueError("monoid views need nonnegative columns")
        self._layers = [{tuple([0] * A.n)}]
        # columns that are positive multiples of a unit vector, by coordinate
        self._axis = {}
        for j, c in enumerate(A.columns):
            nz = [i for i, x in enumerate(c) if x]
            if len(nz) == 1:
                self._axis.setdefault(nz[0], (j, c[nz[0]]))

    @property
    def n(self) -> int:
        return self.config.n

    def degree(self, z: Sequence) -> Fraction:
        return self.config.degree_of(z)

    def layer(self, t: int) -> set[tuple[int, ...]]:
        """All sums of exactly ``t`` columns."""
        cols = self.config.columns
        while len(self._layers) <= t:
            prev = self._layers[-1]
            self._layers.append({tuple(a + b for a, b in zip(p, c)) for p in prev for c in cols})
        return self._layers[t]

    def in_ZA(self, z: Sequence[int]) -> bool:
        return self.lattice.contains(list(z))

    def in_cone(self, q: Sequence) -> bool:
        if any(Fraction(x) < 0 for x in q):
            return False
        w, _ = self.cone_certificate(q)
        return w is not None

    def cone_certificate(self, q: Sequence):
        """``(w, None)`` with ``A w = q, w >= 0`` or ``(None, y)`` separating ``q``.

        When every coordinate in the support of ``q >= 0`` has an axis column
        ``lambda e_i`` the solution is written down directly; otherwise an
        exact simplex decides.
        """
        q = [Fraction(x) for x in q]
        if all(x >= 0 for x in q) and all(i in self._axis for i, x in enumerate(q) if x):
            w = [Fraction(0)] * self.config.m
            for i, x in enumerate(q):
                if x:
                    j, lam = self._axis[i]
                    w[j] = x / lam
            return w, None
        return nonnegative_solution(self.config.rows, q)

    def in_monoid(self, z: Sequence[int]) -> bool:
        z = tuple(z)
        if any(x < 0 for x in z):
            return False
        t = self.degree(z)
        if t.denominator != 1:
            return False
        return z in self.layer(int(t))

    def candidates(self, t: int) -> Iterator[tuple[int, ...]]:
        """Nonnegative integer vectors of grading degree ``t``."""
        c = self.config.grading
        if any(ci <= 0 for ci in c):
            raise ValueError("candidate enumeration needs a positive grading")
        n = self.n
        z = [0] * n

        def rec(i, rest):
            if i == n - 1:
                q = rest / c[i]
                if q.denominator == 1:
                    z[i] = int(q)
                    yield tuple(z)
                return
            k = 0
            while k * c[i] <= rest:
                z[i] = k
                yield from rec(i + 1, rest - k * c[i])
                k += 1
            z[i] = 0

        if n == 0:
            if t == 0:
                yield ()
            return
        yield from rec(0, Fraction(t))


@dataclass(frozen=True)
class Hole:
    degree: int
    vector: tuple[int, ...]

    def to_json(self) -> dict:
        return {"degree": self.degree, "vector": list(self.vector),
                "in_ZA": True, "in_cone": True, "in_monoid": False}


def holes_up_to(M: GradedMonoidView, t_max: int = DEFAULT_T_MAX) -> list[Hole]:
    """Every hole of grading degree ``1..t_max``, by degree then lexicographically."""
    if t_max < 1:
        raise ValueError("t_max must be at least 1")
    out = []
    for t in range(1, t_max + 1):
        layer = M.layer(t)
        found = [z for z in M.candidates(t)
                 if z not in layer and M.in_ZA(z) and M.in_cone(z)]
        out += [Hole(t, z) for z in sorted(found)]
    return out


def minimal_holes(holes: Sequence[Hole]) -> list[Hole]:
    """The holes of the smallest degree present."""
    if not holes:
        return []
    t = min(h.degree for h in holes)
    return sorted((h for h in holes if h.degree == t), key=lambda h: h.vector)


def incomparable_hole_vectors(P: Poset, d: int) -> list[tuple[int, ...]]:
    """``(d-1) e_j + e_k`` for every ordered incomparable pair ``j != k``."""
    out = []
    for j in range(P.n):
        for k in range(P.n):
            if j != k and not P.comparable(j, k):
                v = [0] * P.n
                v[j] += d - 1
                v[k] += 1
                out.append(tuple(v))
    return sorted(out)


def normalization_equals_veronese(M: GradedMonoidView, P: Poset, t_max: int = 3) -> bool:
    """``ZA`` intersected with the cone equals the Veronese monoid up to ``t_max``.

    For a connected ``P`` the Veronese side at degree ``t`` is every
    nonnegative ``z`` with coordinate sum ``t*d``.  The cone lies in the
    nonnegative orthant because the columns do, so equality at degree ``t``
    means every such ``z`` lies in ``ZA`` and in the cone.  Monoid points are
    accepted without solving a linear program.
    """
    if not comparability_graph(P).is_connected():
        raise NotConnected("the normalization statement is for connected posets")
    for t in range(1, t_max + 1):
        layer = M.layer(t)
        for z in M.candidates(t):
            if z in layer:
                continue
            if not (M.in_ZA(z) and M.in_cone(z)):
                return False
    return True


def multichain_view(P: Poset, d: int) -> GradedMonoidView:
    return GradedMonoidView(configuration_from_family(enumerate_multichains(P, d)))
