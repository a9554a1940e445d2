"""Exact integer and rational linear algebra on small matrices.

Everything is arbitrary-precision: Python ints for lattices, ``Fraction`` for
rational systems and the feasibility simplex.  Matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def transpose(M: Sequence[Sequence[int]]) -> list[list]:
    return [list(r) for r in zip(*M)] if M else []


def mat_vec(M: Sequence[Sequence[int]], v: Sequence[int]) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def row_hnf(rows: Sequence[Sequence[int]], ncols: int | None = None,
            track: bool = False):
    """Row-style Hermite normal form by unimodular row operations.

    Returns ``(H, U, rank)`` where ``H = U * rows`` (``U`` only if ``track``),
    the first ``rank`` rows of ``H`` are in echelon form with positive pivots
    and reduced entries above each pivot, and the remaining rows are zero.
    """
    H = [list(r) for r in rows]
    nrows = len(H)
    if ncols is None:
        ncols = len(H[0]) if H else 0
    U = [[int(i == j) for j in range(nrows)] for i in range(nrows)] if track else None
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        # gcd-combine column c over rows r.. into row r
        for i in range(r + 1, nrows):
            if H[i][c] == 0:
                continue
            a, b = H[r][c], H[i][c]
            if a == 0:
                H[r], H[i] = H[i], H[r]
                if track:
                    U[r], U[i] = U[i], U[r]
                continue
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            Hr, Hi = H[r], H[i]
            H[r] = [x * s + y * t for s, t in zip(Hr, Hi)]
            H[i] = [-q * s + p * t for s, t in zip(Hr, Hi)]
            if track:
                Ur, Ui = U[r], U[i]
                U[r] = [x * s + y * t for s, t in zip(Ur, Ui)]
                U[i] = [-q * s + p * t for s, t in zip(Ur, Ui)]
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-v for v in H[r]]
            if track:
                U[r] = [-v for v in U[r]]
        piv = H[r][c]
        for i in range(r):
            f = H[i][c] // piv
            if f:
                H[i] = [s - f * t for s, t in zip(H[i], H[r])]
                if track:
                    U[i] = [s - f * t for s, t in zip(U[i], U[r])]
        pivots.append(c)
        r += 1
    return H, U, r


def rank(M: Sequence[Sequence[int]]) -> int:
    if not M:
        return 0
    return row_hnf(M)[2]


def integer_kernel(A: Sequence[Sequence[int]], m: int | None = None) -> list[list[int]]:
    """A lattice basis of ``{b in Z^m : A b = 0}``.

    Row-reduce ``A^T`` while tracking the unimodular transform; the transform
    rows that map to zero span the kernel lattice.
    """
    if m is None:
        m = len(A[0]) if A else 0
    if not A:
        return [[int(i == j) for j in range(m)] for i in range(m)]
    At = transpose(A)
    H, U, r = row_hnf(At, ncols=len(A), track=True)
    basis = [U[i] for i in range(r, m)]
    return _reduce_basis(basis)


def _l1(v):
    return sum(abs(x) for x in v)


def _reduce_basis(basis: list[list[int]]) -> list[list[int]]:
    """Greedy pairwise reduction of lattice basis vectors (keeps a basis)."""
    basis = [list(b) for b in basis]
    changed = True
    while changed:
        changed = False
        basis.sort(key=_l1)
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i == j:
                    continue
                bi, bj = basis[i], basis[j]
                for sgn in (1, -1):
                    cand = [x - sgn * y for x, y in zip(bi, bj)]
                    if _l1(cand) < _l1(bi):
                        basis[i] = bi = cand
                        changed = True
    out = []
    for b in basis:
        nz = next((x for x in b if x), 0)
        out.append([-x for x in b] if nz < 0 else b)
    return sorted(out, key=lambda v: (_l1(v), [-x for x in v]))


def smith_invariants(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors of an integer matrix (Smith normal form diagonal)."""
    A = [list(r) for r in M if any(r)]
    if not A:
        return []
    while True:
        H, _, r = row_hnf(A)
        H = [row for row in H[:r]]
        T, _, r2 = row_hnf(transpose(H))
        T = [row for row in T[:r2]]
        diag = all(T[i][j] == 0 for i in range(len(T)) for j in range(len(T[0])) if i != j)
        if diag:
            d = [T[i][i] for i in range(min(len(T), len(T[0])))]
            # enforce divisibility chain
            changed = True
            while changed:
                changed = False
                for i in range(len(d)):
                    for j in range(i + 1, len(d)):
                        g = gcd(d[i], d[j])
                        if g != d[i]:
                            d[i], d[j] = g, d[i] * d[j] // g
                            changed = True
            return [abs(x) for x in d]
        A = transpose(T)


class IntegerLattice:
    """The lattice spanned by integer vectors, with exact membership."""

    def __init__(self, gens: Sequence[Sequence[int]], dim: int):
        self.dim = dim
        H, _, r = row_hnf(gens, ncols=dim) if gens else ([], None, 0)
        self.basis = [list(row) for row in H[:r]]
        self.pivots = [next(c for c, v in enumerate(row) if v) for row in self.basis]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, z: Sequence[int]) -> bool:
        z = list(z)
        for row, c in zip(self.basis, self.pivots):
            if z[c] % row[c]:
                return False
            f = z[c] // row[c]
            if f:
                z = [a - f * b for a, b in zip(z, row)]
        return not any(z)


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of ``rows * x = rhs`` (free variables set to 0), or None."""
    n = len(rows[0]) if rows else 0
    M = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(M)):
        if M[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = M[i][n]
    return x


def nonnegative_solution(A: Sequence[Sequence[int]], q: Sequence):
    """Exact feasibility of ``A w = q, w >= 0`` by a Phase-I simplex.

    Returns ``(w, None)`` with a feasible ``w`` or ``(None, y)`` with a Farkas
    certificate: ``y^T A <= 0`` componentwise and ``y^T q > 0``.
    Bland's rule guarantees termination.
    """
    n = len(A)
    m = len(A[0]) if n else 0
    sign = [1 if Fraction(qi) >= 0 else -1 for qi in q]
    # tableau columns: m structural, n artificial, rhs
    T = []
    for i in range(n):
        s = sign[i]
        row = [Fraction(s * a) for a in A[i]]
        row += [Fraction(int(i == k)) for k in range(n)]
        row.append(Fraction(s) * Fraction(q[i]))
        T.append(row)
    basis = [m + i for i in range(n)]
    cost = [Fraction(0)] * m + [Fraction(1)] * n
    while True:
        # reduced costs  c_j - c_B B^-1 a_j ; B^-1 a_j is column j of T
        enter = None
        for j in range(m + n):
            if j in basis:
                continue
            rc = cost[j] - sum(cost[basis[i]] * T[i][j] for i in range(n))
            if rc < 0:
                enter = j
                break
        if enter is None:
            break
        leave, best = None, None
        for i in range(n):
            if T[i][enter] > 0:
                ratio = T[i][-1] / T[i][enter]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded cannot happen in Phase I
            break
        pv = T[leave][enter]
        T[leave] = [v / pv for v in T[leave]]
        for i in range(n):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [a - f * b for a, b in zip(T[i], T[leave])]
        basis[leave] = enter
    value = sum(cost[basis[i]] * T[i][-1] for i in range(n))
    if value == 0:
        w = [Fraction(0)] * m
        for i, j in enumerate(basis):
            if j < m:
                w[j] = T[i][-1]
        return w, None
    # dual of Phase I: y = c_B B^{-1}; B^{-1} sits in the artificial columns
    y = [sum(cost[basis[i]] * T[i][m + k] for i in range(n)) for k in range(n)]
    # undo the row sign flips, then flip to the "y^T A <= 0, y^T q > 0" form
    y = [yk * sign[k] for k, yk in enumerate(y)]
    return None, y
