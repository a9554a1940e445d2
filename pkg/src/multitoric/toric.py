"""Configurations and their toric ideals.

The toric ideal of a configuration ``A`` is generated by the binomials
``y^{b+} - y^{b-}`` for integer kernel vectors ``b``.  Generators are found by
saturating the ideal of a kernel lattice basis by one variable at a time;
quadratic generation is decided against the exhaustive list of quadrics.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .binomials import MonomialOrder, PureBinomial, ReducedGB, buchberger
from .errors import FiberTooLarge, PreconditionViolated
from .lattice import integer_kernel, rank, smith_invariants, solve_rational, transpose

FIBER_CAP = 10 ** 6


def grading_witness(cols: Sequence[Sequence[int]]) -> tuple[Fraction, ...] | None:
    """A rational ``c`` with ``a_j . c = 1`` for every column, or None."""
    cols = [tuple(c) for c in cols]
    if not cols:
        return None
    sol = solve_rational(cols, [1] * len(cols))
    return None if sol is None else tuple(sol)


@dataclass(frozen=True)
class Configuration:
    """Integer columns ``a_1..a_m`` in ``Z^n`` with a grading witness."""

    columns: tuple[tuple[int, ...], ...]
    grading: tuple[Fraction, ...] | None = None
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.columns)
        object.__setattr__(self, "columns", cols)
        if not cols:
            raise ValueError("a configuration needs at least one column")
        if len({len(c) for c in cols}) != 1:
            raise ValueError("columns have different lengths")
        c = self.grading
        if c is None:
            c = grading_witness(cols)
            if c is None:
                raise ValueError("no grading witness: the columns are not a configuration")
        c = tuple(Fraction(x) for x in c)
        if any(sum(Fraction(a) * x for a, x in zip(col, c)) != 1 for col in cols):
            raise ValueError("grading witness does not give every column degree 1")
        object.__setattr__(self, "grading", c)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"y_{j + 1}" for j in range(len(cols))))

    @property
    def n(self) -> int:
        return len(self.columns[0])

    @property
    def m(self) -> int:
        return len(self.columns)

    @property
    def rows(self) -> list[list[int]]:
        return transpose(self.columns)

    def image(self, u: Sequence[int]) -> tuple[int, ...]:
        out = [0] * self.n
        for j, e in enumerate(u):
            if e:
                for i, a in enumerate(self.columns[j]):
                    out[i] += e * a
        return tuple(out)

    def degree_of(self, image: Sequence[int]) -> Fraction:
        return sum(Fraction(b) * c for b, c in zip(image, self.grading))

    def in_ideal(self, b: PureBinomial) -> bool:
        return self.image(b.plus) == self.image(b.minus)

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "columns": [list(c) for c in self.columns],
                "grading": [str(x) for x in self.grading]}

    @classmethod
    def from_json(cls, obj: dict) -> "Configuration":
        cfg = cls(tuple(tuple(c) for c in obj["columns"]),
                  tuple(Fraction(x) for x in obj["grading"]))
        if cfg.n != obj.get("n", cfg.n) or cfg.m != obj.get("m", cfg.m):
            raise ValueError("n/m do not match the columns")
        return cfg

    def format_matrix(self) -> str:
        rows = self.rows
        width = max(len(str(x)) for r in rows for x in r)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in rows)


def configuration_from_family(F) -> Configuration:
    """Columns ``rho(C_1), ..., rho(C_m)`` with grading ``(1/d, ..., 1/d)``."""
    c = tuple(Fraction(1, F.d) for _ in range(F.poset.n))
    labels = tuple(C.var_name() for C in F.members)
    return Configuration(tuple(F.columns()), c, labels)



def random_configuration(rng, n_max: int = 4, m_max: int = 8, entry_max: int = 3) -> Configuration:
    """A random nonnegative configuration whose columns lie on ``w . a = s``.

    ``rng`` is a ``random.Random``.  The weights ``w`` are drawn from ``{1, 2}``
    and every column satisfies ``w . a = s``, so ``w / s`` is a grading witness.
    """
    while True:
        n = rng.randint(min(2, n_max), n_max)
        w = [rng.randint(1, 2) for _ in range(n)]
        s = rng.randint(1, entry_max + 1)
        pool = [a for a in itertools.product(range(entry_max + 1), repeat=n)
                if sum(x * y for x, y in zip(w, a)) == s]
        if len(pool) >= 2 or n_max == 1:
            break
    m = min(len(pool), rng.randint(min(3, m_max), m_max))
    cols = rng.sample(pool, m)
    return Configuration(tuple(cols), tuple(Fraction(x, s) for x in w))


@dataclass(frozen=True)
class KernelLattice:
    basis: tuple[tuple[int, ...], ...]
    m: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def binomials(self) -> list[PureBinomial]:
        return [PureBinomial.from_vector(b) for b in self.basis]


def kernel_lattice(A: Configuration) -> KernelLattice:
    basis = integer_kernel(A.rows, A.m)
    return KernelLattice(tuple(tuple(b) for b in basis), A.m)


def is_kernel_basis(A: Configuration, K: KernelLattice) -> bool:
    """Check ``A b = 0``, the rank count, and saturation (all Smith invariants 1)."""
    rows = A.rows
    for b in K.basis:
        if any(sum(r[j] * b[j] for j in range(A.m)) for r in rows):
            return False
    if K.rank != A.m - rank(rows):
        return False
    if not K.basis:
        return True
    inv = smith_invariants([list(b) for b in K.basis])
    return len(inv) == K.rank and all(x == 1 for x in inv)


@dataclass(frozen=True)
class MarkovBasis:
    gens: tuple[PureBinomial, ...]

    @property
    def max_degree(self) -> int:
        return max((g.degree for g in self.gens), default=0)

    def __len__(self):
        return len(self.gens)

    def __iter__(self):
        return iter(self.gens)


def _divide_out(g: PureBinomial, k: int) -> PureBinomial | None:
    e = min(g.plus[k], g.minus[k])
    if e == 0:
        return g
    plus = list(g.plus)
    minus = list(g.minus)
    plus[k] -= e
    minus[k] -= e
    if plus == minus:
        return None
    return PureBinomial(tuple(plus), tuple(minus))


def saturate_variable(gens: Sequence[PureBinomial], m: int, k: int) -> tuple[list[PureBinomial], ReducedGB]:
    """Generators of ``J : y_k^infinity``.

    With ``y_k`` last in grevlex, dividing every element of the reduced
    Gröbner basis of ``J`` by the largest power of ``y_k`` it contains gives
    a Gröbner basis of the saturation (homogeneous ``J`` only).
    """
    gb = buchberger(gens, MonomialOrder.with_last(m, k))
    out = []
    for g in gb:
        h = _divide_out(g, k)
        if h is not None:
            out.append(h)
    return out, gb


def markov_basis(A: Configuration, extra: Iterable[PureBinomial] = (),
                 variables: Sequence[int] | None = None) -> MarkovBasis:
    """A finite generating set of the toric ideal.

    Starts from the kernel lattice basis (plus any ``extra`` binomials known
    to lie in the toric ideal) and saturates by each variable in turn.
    """
    gens = kernel_lattice(A).binomials()
    for b in extra:
        if not A.in_ideal(b):
            raise ValueError(f"{b} is not in the toric ideal")
        gens.append(b)
    if not gens:
        return MarkovBasis(())
    for k in (range(A.m) if variables is None else variables):
        gens, _ = saturate_variable(gens, A.m, k)
    unique = {}
    for g in gens:
        unique.setdefault(frozenset((g.plus, g.minus)), g)
    out = sorted(unique.values(), key=lambda g: (g.degree, g.plus, g.minus))
    return MarkovBasis(tuple(out))


def toric_gb(A: Configuration, order: MonomialOrder, markov: MarkovBasis | None = None) -> ReducedGB:
    """Reduced Gröbner basis of the toric ideal for ``order``."""
    if markov is None:
        markov = markov_basis(A)
    return buchberger(markov.gens, order)


def minimal_generators(MB: MarkovBasis, A: Configuration | None = None) -> list[PureBinomial]:
    """Greedy degree-by-degree minimal generating subset of ``MB``."""
    kept: list[PureBinomial] = []
    if not MB.gens:
        return kept
    m = MB.gens[0].nvars
    order = MonomialOrder.grevlex(m)
    gb = None
    for g in sorted(MB.gens, key=lambda g: (g.degree, g.plus, g.minus)):
        if A is not None and not A.in_ideal(g):
            raise ValueError(f"{g} is not in the toric ideal")
        if gb is not None and gb.contains(g):
            continue
        kept.append(g)
        gb = buchberger(kept, order)
    return kept


def minimal_degrees(MB: MarkovBasis, A: Configuration | None = None) -> list[int]:
    """Degrees of a minimal homogeneous generating set, sorted."""
    return sorted(g.degree for g in minimal_generators(MB, A))


def quadric_fibers(A: Configuration) -> dict[tuple[int, ...], list[tuple[int, int]]]:
    """Degree-2 monomials ``y_p y_q`` (``p <= q``) grouped by A-image."""
    groups = defaultdict(list)
    cols = A.columns
    for p in range(A.m):
        for q in range(p, A.m):
            groups[tuple(a + b for a, b in zip(cols[p], cols[q]))].append((p, q))
    return groups


def _quad(m: int, p: int, q: int) -> tuple[int, ...]:
    v = [0] * m
    v[p] += 1
    v[q] += 1
    return tuple(v)


def all_quadrics(A: Configuration) -> list[PureBinomial]:
    """Every binomial ``y_p y_q - y_r y_s`` of the toric ideal (unordered pairs)."""
    out = []
    for pairs in quadric_fibers(A).values():
        for (p, q), (r, s) in itertools.combinations(pairs, 2):
            out.append(PureBinomial(_quad(A.m, p, q), _quad(A.m, r, s)))
    return out


def quadric_span(A: Configuration) -> list[PureBinomial]:
    """Quadrics ``u - u_0`` (``u_0`` first in each fiber): same ideal as all_quadrics."""
    out = []
    for pairs in quadric_fibers(A).values():
        base = _quad(A.m, *pairs[0])
        out.extend(PureBinomial(_quad(A.m, p, q), base) for p, q in pairs[1:])
    return out


def linear_binomials(A: Configuration) -> list[PureBinomial]:
    """``y_p - y_q`` for repeated columns."""
    first = {}
    out = []
    for j, c in enumerate(A.columns):
        if c in first:
            u = [0] * A.m
            v = [0] * A.m
            u[j], v[first[c]] = 1, 1
            out.append(PureBinomial(tuple(u), tuple(v)))
        else:
            first[c] = j
    return out


@dataclass
class Fiber:
    """All monomials with a fixed A-image."""

    image: tuple[int, ...]
    degree: int
    members: list[tuple[int, ...]]

    def components(self, k: int = 2) -> list[list[tuple[int, ...]]]:
        """Connected components under moves of degree at most ``k``.

        ``u ~ v`` iff they share a common factor of degree ``>= degree - k``.
        """
        t = self.degree
        parent = list(range(len(self.members)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        if t <= k:
            groups = {(): list(range(len(self.members)))}
        else:
            groups = defaultdict(list)
            for idx, u in enumerate(self.members):
                flat = [j for j, e in enumerate(u) for _ in range(e)]
                for w in set(itertools.combinations(flat, t - k)):
                    groups[w].append(idx)
        for idxs in groups.values():
            r0 = find(idxs[0])
            for i in idxs[1:]:
                ri = find(i)
                if ri != r0:
                    parent[ri] = r0
        comps = defaultdict(list)
        for idx, u in enumerate(self.members):
            comps[find(idx)].append(u)
        return sorted((sorted(c, reverse=True) for c in comps.values()), reverse=True)

    def is_connected(self, k: int = 2) -> bool:
        return len(self.components(k)) <= 1


def fiber(A: Configuration, image: Sequence[int], cap: int = FIBER_CAP) -> Fiber:
    """Enumerate ``{u >= 0 : A u = image}`` by depth-first search over columns."""
    image = tuple(image)
    t = A.degree_of(image)
    if t.denominator != 1 or t < 0:
        return Fiber(image, -1, [])
    t = int(t)
    cols = A.columns
    m = A.m
    nonneg = all(x >= 0 for c in cols for x in c)
    members = []
    u = [0] * m

    def rec(j, residual, left):
        if left == 0:
            if not any(residual):
                members.append(tuple(u))
                if len(members) > cap:
                    raise FiberTooLarge(f"fiber of {image} exceeds {cap} members")
            return
        if j == m:
            return
        col = cols[j]
        maxe = left
        if nonneg:
            for a, r in zip(col, residual):
                if a > 0:
                    maxe = min(maxe, r // a)
        for e in range(maxe, -1, -1):
            u[j] = e
            rec(j + 1, tuple(r - e * a for r, a in zip(residual, col)), left - e)
        u[j] = 0

    if nonneg and any(x < 0 for x in image):
        return Fiber(image, t, [])
    rec(0, image, t)
    return Fiber(image, t, members)


def monomials_of_degree(m: int, t: int):
    for combo in itertools.combinations_with_replacement(range(m), t):
        v = [0] * m
        for j in combo:
            v[j] += 1
        yield tuple(v)


def fibers_of_degree(A: Configuration, t: int) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    groups = defaultdict(list)
    for u in monomials_of_degree(A.m, t):
        groups[A.image(u)].append(u)
    return groups


def fibers_connected_up_to(A: Configuration, bound: int, k: int = 2):
    """Check every fiber of degree ``<= bound`` for k-move connectivity.

    Returns ``(True, None)`` or ``(False, fiber)`` for the first disconnected one.
    """
    for t in range(2, bound + 1):
        for image, members in sorted(fibers_of_degree(A, t).items()):
            if len(members) < 2:
                continue
            F = Fiber(image, t, members)
            if not F.is_connected(k):
                return False, F
    return True, None


@dataclass
class QuadraticGeneration:
    """Outcome of the quadratic-generation decision."""

    verdict: bool
    certificate: PureBinomial | None
    markov_degrees: list[int]
    verify_bound: int
    fiber_check: bool | None = None
    disconnected_fiber: Fiber | None = field(default=None, repr=False)

    def to_json(self) -> dict:
        return {"verdict": self.verdict,
                "certificate": None if self.certificate is None else self.certificate.to_json(),
                "markov_degrees": self.markov_degrees, "verify_bound": self.verify_bound,
                "fiber_check": self.fiber_check}


def generated_in_degree_two(A: Configuration, verify_bound: int | None = None,
                            markov: MarkovBasis | None = None,
                            cross_check: bool = False) -> QuadraticGeneration:
    """Decide whether the toric ideal is generated by quadrics.

    True iff every Markov generator reduces to zero modulo a Gröbner basis of
    the ideal of all quadrics (degree-1 binomials from repeated columns are
    allowed alongside).  With ``cross_check`` every fiber of degree up to the
    bound is also tested for connectivity under quadratic moves.
    """
    low = linear_binomials(A) + quadric_span(A)
    if markov is None:
        markov = markov_basis(A, extra=low)
    bound = max(4, markov.max_degree + 1)
    if verify_bound is not None:
        bound = max(bound, verify_bound)
    cert = None
    if markov.gens:
        if low:
            gb2 = buchberger(low, MonomialOrder.grevlex(A.m))
            bad = [g for g in markov.gens if not gb2.contains(g)]
        else:
            bad = list(markov.gens)
        if bad:
            cert = min(bad, key=lambda g: (g.degree, g.plus, g.minus))
    verdict = cert is None
    degs = sorted({g.degree for g in markov.gens})
    result = QuadraticGeneration(verdict, cert, degs, bound)
    if cross_check:
        ok, bad_fiber = fibers_connected_up_to(A, bound)
        result.fiber_check = ok
        result.disconnected_fiber = bad_fiber
    return result


def lemma1_check(A: Configuration, left: Sequence[int], right: Sequence[int]) -> bool:
    """Test the hypothesis that certifies non-quadratic generation.

    ``left`` and ``right`` are disjoint index multisets of equal size ``r >= 3``
    with equal column sums.  True iff for every pair from ``left`` the only way
    to write its column sum as ``a_p + a_q`` is the pair itself.
    """
    left, right = list(left), list(right)
    if len(left) != len(right) or len(left) < 3:
        raise PreconditionViolated("left and right must have equal size r >= 3")
    if set(left) & set(right):
        raise PreconditionViolated("left and right index sets intersect")
    if any(not (0 <= j < A.m) for j in left + right):
        raise PreconditionViolated("column index out of range")
    cols = A.columns

    def colsum(idx):
        return tuple(sum(cols[j][i] for j in idx) for i in range(A.n))

    if colsum(left) != colsum(right):
        raise PreconditionViolated("column sums differ")
    where = defaultdict(list)
    for j, c in enumerate(cols):
        where[c].append(j)
    for a, b in itertools.combinations(range(len(left)), 2):
        pair = sorted((left[a], left[b]))
        s = tuple(x + y for x, y in zip(cols[pair[0]], cols[pair[1]]))
        for p in range(A.m):
            rest = tuple(x - y for x, y in zip(s, cols[p]))
            for q in where.get(rest, ()):
                if q >= p and [p, q] != pair:
                    return False
    return True


def lemma1_binomial(A: Configuration, left: Sequence[int], right: Sequence[int]) -> PureBinomial:
    u = [0] * A.m
    v = [0] * A.m
    for j in left:
        u[j] += 1
    for j in right:
        v[j] += 1
    return PureBinomial(tuple(u), tuple(v))
