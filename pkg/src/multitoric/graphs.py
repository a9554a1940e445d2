"""Simple graphs, perfect elimination orderings and strong chordality.

Vertices are ``0..n-1``; ``adj[v]`` is the neighbourhood of ``v`` as a bitmask.
Orderings are sequences of vertices: ``order[0]`` is eliminated first.
"""
from __future__ import annotations

import itertools
import warnings
from collections import deque
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import InvalidInnerEdge, SunSearchLimitExceeded

SUN_SEARCH_LIMIT = 12


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        for v in range(self.n):
            if self.adj[v] >> v & 1:
                raise ValueError(f"loop at vertex {v + 1}")
            for u in _bits(self.adj[v]):
                if u >= self.n or not self.adj[u] >> v & 1:
                    raise ValueError("adjacency is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u + 1}, {v + 1}) outside 1..{n}")
            if u == v:
                raise ValueError(f"loop at vertex {u + 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full & ~(1 << v) for v in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def closed(self, v: int) -> int:
        return self.adj[v] | (1 << v)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        vs = list(vertices)
        pos = {v: i for i, v in enumerate(vs)}
        adj = []
        for v in vs:
            adj.append(sum(1 << pos[u] for u in _bits(self.adj[v]) if u in pos))
        return Graph(len(vs), tuple(adj))

    def relabel(self, order: Sequence[int]) -> "Graph":
        """The graph whose vertex ``k`` is the old vertex ``order[k]``."""
        return self.induced(order)

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.n):
            if seen >> s & 1:
                continue
            comp, frontier = 1 << s, 1 << s
            while frontier:
                nxt = 0
                for v in _bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            comps.append(list(_bits(comp)))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_clique(self, mask: int) -> bool:
        return all((self.closed(v) & mask) == mask for v in _bits(mask))

    def edge_bits(self) -> int:
        """Edge set as a bitmask over the pairs ``(u, v)``, ``u < v``, in lex order."""
        out, k = 0, 0
        for u in range(self.n):
            for v in range(u + 1, self.n):
                if self.adj[u] >> v & 1:
                    out |= 1 << k
                k += 1
        return out


@dataclass(frozen=True)
class ChordalityCertificate:
    chordal: bool
    peo: tuple[int, ...] | None = None
    hole: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {"verdict": "chordal" if self.chordal else "not_chordal",
                "peo": None if self.peo is None else [v + 1 for v in self.peo],
                "hole": None if self.hole is None else [v + 1 for v in self.hole]}


@dataclass(frozen=True)
class StrongChordalityCertificate:
    strongly_chordal: bool
    speo: tuple[int, ...] | None = None
    hole: tuple[int, ...] | None = None
    sun: tuple[int, ...] | None = None

    @property
    def obstruction(self):
        return self.hole if self.hole is not None else self.sun

    def to_json(self) -> dict:
        def one_based(t):
            return None if t is None else [v + 1 for v in t]
        return {"verdict": "strongly_chordal" if self.strongly_chordal else "not_strongly_chordal",
                "speo": one_based(self.speo), "hole": one_based(self.hole), "sun": one_based(self.sun)}


def _check_order(G: Graph, order: Sequence[int]):
    if sorted(order) != list(range(G.n)):
        raise ValueError(f"{list(order)} is not a vertex ordering of a graph on {G.n} vertices")


def verify_peo(G: Graph, order: Sequence[int]) -> bool:
    """Each vertex's later neighbours form a clique."""
    _check_order(G, order)
    later = (1 << G.n) - 1
    for v in order:
        later &= ~(1 << v)
        if not G.is_clique(G.adj[v] & later):
            return False
    return True


def strong_condition_i(G: Graph, order: Sequence[int]) -> bool:
    """For positions i<j<k<l: v_i v_k, v_i v_l, v_j v_k edges imply v_j v_l."""
    H = G.relabel(order)
    n = H.n
    for i in range(n):
        later = H.adj[i] & ~((1 << (i + 1)) - 1)
        for k in _bits(later):
            for l in _bits(later >> (k + 1) << (k + 1)):
                for j in range(i + 1, k):
                    if H.adj[j] >> k & 1 and not H.adj[j] >> l & 1:
                        return False
    return True


def strong_condition_ii(G: Graph, order: Sequence[int]) -> bool:
    """For positions i<j and k<l: v_k, v_l in N[v_i] and v_k in N[v_j] imply v_l in N[v_j].

    Neighbourhoods are closed, which is the reading under which the condition
    is satisfiable when indices coincide.
    """
    H = G.relabel(order)
    n = H.n
    closed = [H.closed(v) for v in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            for k in _bits(closed[i] & closed[j]):
                missing = closed[i] & ~closed[j] & ~((1 << (k + 1)) - 1)
                if missing:
                    return False
    return True


def verify_strong_peo(G: Graph, order: Sequence[int]) -> bool:
    return verify_peo(G, order) and strong_condition_i(G, order)


def _shortest_path(G: Graph, s: int, t: int, allowed: int):
    prev = {s: None}
    q = deque([s])
    while q:
        v = q.popleft()
        if v == t:
            path = []
            while v is not None:
                path.append(v)
                v = prev[v]
            return path[::-1]
        for u in _bits(G.adj[v] & allowed):
            if u not in prev:
                prev[u] = v
                q.append(u)
    return None


def find_hole(G: Graph, within: int | None = None) -> tuple[int, ...] | None:
    """An induced cycle of length at least 4, or None if the graph is chordal.

    For a vertex ``v`` with non-adjacent neighbours ``a, b``, a shortest
    ``a``-``b`` path avoiding the rest of ``N[v]`` closes an induced cycle.
    """
    if within is None:
        within = (1 << G.n) - 1
    for v in _bits(within):
        nb = G.adj[v] & within
        for a in _bits(nb):
            for b in _bits(nb):
                if b <= a or G.has_edge(a, b):
                    continue
                allowed = within & ~(nb | (1 << v)) | (1 << a) | (1 << b)
                path = _shortest_path(G, a, b, allowed)
                if path is not None:
                    cyc = [v] + path
                    return _canonical_cycle(cyc)
    return None


def _canonical_cycle(cyc: Sequence[int]) -> tuple[int, ...]:
    """Rotate to start at the smallest vertex, heading to its smaller cycle neighbour."""
    k = len(cyc)
    i = cyc.index(min(cyc))
    fwd = [cyc[(i + t) % k] for t in range(k)]
    bwd = [cyc[(i - t) % k] for t in range(k)]
    return tuple(min(fwd, bwd, key=lambda c: c[1]))


def find_peo(G: Graph) -> ChordalityCertificate:
    """Greedy simplicial elimination (smallest index first)."""
    remaining = (1 << G.n) - 1
    order = []
    while remaining:
        for v in _bits(remaining):
            if G.is_clique(G.adj[v] & remaining):
                order.append(v)
                remaining &= ~(1 << v)
                break
        else:
            return ChordalityCertificate(False, hole=find_hole(G, remaining))
    return ChordalityCertificate(True, peo=tuple(order))


def is_chordal(G: Graph) -> bool:
    return find_peo(G).chordal


def _is_simple(G: Graph, v: int, remaining: int) -> bool:
    nbhds = sorted((G.closed(u) & remaining for u in _bits(G.closed(v) & remaining)), key=_popcount)
    return all(a & ~b == 0 for a, b in zip(nbhds, nbhds[1:]))


def _strong_order(G: Graph) -> tuple[int, ...] | None:
    """Depth-first search for a strong PEO.

    Each chosen vertex must be simple in the remaining graph, and its
    remaining neighbours must then leave in the order of their (nested)
    closed neighbourhoods, smaller first.  Ties go to the smallest index.
    """
    n = G.n
    full = (1 << n) - 1
    order: list[int] = []

    def rec(remaining: int, before: tuple[int, ...]) -> bool:
        # before[v]: vertices that must be eliminated before v
        if not remaining:
            return True
        for v in _bits(remaining):
            if before[v] & remaining or not _is_simple(G, v, remaining):
                continue
            rest = remaining & ~(1 << v)
            nb = [u for u in _bits(G.adj[v] & rest)]
            new_before = list(before)
            for a in nb:
                for b in nb:
                    na, nb_ = G.closed(a) & rest, G.closed(b) & rest
                    if na != nb_ and na & ~nb_ == 0:
                        new_before[b] |= 1 << a
            order.append(v)
            if rec(rest, tuple(new_before)):
                return True
            order.pop()
        return False

    if rec(full, (0,) * n):
        return tuple(order)
    return None


def find_strong_peo(G: Graph) -> StrongChordalityCertificate:
    """Strongly chordal verdict, with a strong PEO or an obstruction.

    The verdict comes from repeatedly removing the smallest simple vertex
    (a vertex is simple when the closed neighbourhoods of its closed
    neighbourhood are totally ordered by inclusion).  Such an order need
    not itself be a strong PEO, so the certificate is built separately.
    """
    remaining = (1 << G.n) - 1
    while remaining:
        for v in _bits(remaining):
            if _is_simple(G, v, remaining):
                remaining &= ~(1 << v)
                break
        else:
            cert = find_peo(G)
            if not cert.chordal:
                return StrongChordalityCertificate(False, hole=cert.hole)
            if G.n > SUN_SEARCH_LIMIT:
                warnings.warn(f"sun search skipped for n={G.n} > {SUN_SEARCH_LIMIT}",
                              SunSearchLimitExceeded)
                return StrongChordalityCertificate(False)
            return StrongChordalityCertificate(False, sun=find_sun(G))
    speo = _strong_order(G)
    if speo is None:
        raise RuntimeError("simple elimination succeeded but no strong PEO was found")
    return StrongChordalityCertificate(True, speo=speo)


def is_strongly_chordal(G: Graph) -> bool:
    return find_strong_peo(G).strongly_chordal


def sun_order(G: Graph, vertices: Sequence[int]) -> tuple[int, ...] | None:
    """If ``vertices`` induce a sun, return it as ``(v_1, ..., v_2l)``.

    In the returned order the vertices at even 0-based positions
    (``v_1, v_3, ...``) are independent, each adjacent exactly to its two
    cycle neighbours; the remaining edges join vertices at odd positions.
    """
    vs = list(vertices)
    if len(vs) < 6 or len(vs) % 2:
        return None
    ell = len(vs) // 2
    W = sum(1 << v for v in vs)
    for U in itertools.combinations(vs, ell):
        Umask = sum(1 << u for u in U)
        inner = W & ~Umask
        ok = True
        for u in U:
            nb = G.adj[u] & W
            if nb & Umask or _popcount(nb) != 2:
                ok = False
                break
        if not ok:
            continue
        if any(_popcount(G.adj[w] & Umask) != 2 for w in _bits(inner)):
            continue
        # walk the alternating cycle from the smallest outer vertex
        start = min(U)
        cyc = [start]
        prev, cur = None, start
        while True:
            nbrs = sorted(_bits(G.adj[cur] & (inner if cur in U else Umask)))
            nxt = nbrs[0] if prev is None else (nbrs[1] if nbrs[0] == prev else nbrs[0])
            if nxt == start:
                break
            cyc.append(nxt)
            prev, cur = cur, nxt
        if len(cyc) == len(vs):
            return tuple(cyc)
    return None


def find_sun(G: Graph, limit: int = SUN_SEARCH_LIMIT) -> tuple[int, ...] | None:
    """Exhaustive search for an induced sun on 6, 8, ... vertices."""
    if G.n > limit:
        warnings.warn(f"sun search skipped for n={G.n} > {limit}", SunSearchLimitExceeded)
        return None
    for size in range(6, 2 * (G.n // 2) + 1, 2):
        for vs in itertools.combinations(range(G.n), size):
            found = sun_order(G, vs)
            if found is not None:
                return found
    return None


def sun_graph(ell: int, inner_edges: Sequence[tuple[int, int]] = ()) -> Graph:
    """The sun on ``2*ell`` vertices.

    Vertex ``t`` (0-based) is ``v_{t+1}``: the cycle edges are
    ``{t, t+1 mod 2l}``, and ``inner_edges`` may only join odd 0-based
    vertices (``v_2, v_4, ...``).
    """
    if ell < 3:
        raise ValueError("a sun needs ell >= 3")
    n = 2 * ell
    edges = {tuple(sorted((t, (t + 1) % n))) for t in range(n)}
    for u, v in inner_edges:
        if u % 2 == 0 or v % 2 == 0 or u == v or not (0 <= u < n and 0 <= v < n):
            raise InvalidInnerEdge(f"inner edge {{v{u + 1}, v{v + 1}}} is not between even-indexed vertices")
        edges.add(tuple(sorted((u, v))))
    return Graph.from_edges(n, sorted(edges))


def complete_sun(ell: int) -> Graph:
    inner = [(u, v) for u, v in itertools.combinations(range(1, 2 * ell, 2), 2)]
    return sun_graph(ell, inner)


def induced_cycles(G: Graph, min_length: int = 4) -> list[tuple[int, ...]]:
    """All induced cycles of length >= ``min_length`` by subset enumeration."""
    out = []
    for size in range(max(min_length, 3), G.n + 1):
        for vs in itertools.combinations(range(G.n), size):
            mask = sum(1 << v for v in vs)
            if all(_popcount(G.adj[v] & mask) == 2 for v in vs):
                H = G.induced(vs)
                if H.is_connected():
                    # walk it
                    cyc, prev, cur = [vs[0]], None, vs[0]
                    while True:
                        nbrs = sorted(_bits(G.adj[cur] & mask))
                        nxt = nbrs[0] if prev is None else (nbrs[1] if nbrs[0] == prev else nbrs[0])
                        if nxt == vs[0]:
                            break
                        cyc.append(nxt)
                        prev, cur = cur, nxt
                    out.append(_canonical_cycle(cyc))
    return out


def all_graphs(n: int) -> Iterator[Graph]:
    """Every labeled simple graph on ``n`` vertices, by edge bitmask."""
    pairs = list(itertools.combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        adj = [0] * n
        for k, (u, v) in enumerate(pairs):
            if bits >> k & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        yield Graph(n, tuple(adj))


def canonical_graph(G: Graph) -> tuple[tuple[int, int], tuple[int, ...]]:
    """Canonical edge encoding over relabelings, with an order attaining it.

    Relabelings keep vertices sorted by degree; only permutations within
    equal-degree classes are tried.
    """
    deg = [_popcount(a) for a in G.adj]
    classes = sorted(set(deg))
    blocks = [[v for v in range(G.n) if deg[v] == d] for d in classes]
    best, best_order = None, None
    for parts in itertools.product(*(itertools.permutations(b) for b in blocks)):
        order = [v for part in parts for v in part]
        key = G.relabel(order).edge_bits()
        if best is None or key < best:
            best, best_order = key, tuple(order)
    return (G.n, best), best_order
