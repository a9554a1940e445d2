"""Independent reference computations used by the tests.

These use sympy's general Gröbner machinery or plain brute force, and share
no code with the package beyond the data types.
"""
import itertools

import sympy

from multitoric.binomials import PureBinomial


def sympy_symbols(m):
    return sympy.symbols(f"y1:{m + 1}")


def to_sympy(b, ys):
    return sympy.Mul(*[y ** e for y, e in zip(ys, b.plus)]) - sympy.Mul(*[y ** e for y, e in zip(ys, b.minus)])


def from_sympy_gb(G, ys, order):
    """Convert a sympy reduced GB of pure binomials to a set of PureBinomials."""
    out = set()
    for g in G.exprs:
        p = sympy.Poly(g, *ys)
        terms = p.terms(order=order)
        assert len(terms) == 2, g
        (lead, c1), (trail, c2) = terms
        assert c1 == 1 and c2 == -1, g
        out.add(PureBinomial(tuple(lead), tuple(trail)))
    return out


def sympy_gb(gens, m, order="grevlex"):
    ys = sympy_symbols(m)
    G = sympy.groebner([to_sympy(b, ys) for b in gens], *ys, order=order)
    return from_sympy_gb(G, ys, order)


def sympy_toric_gb(columns, order="grevlex"):
    """Reduced GB of the toric ideal by eliminating ``t`` from ``y_j - t^{a_j}``."""
    n = len(columns[0])
    m = len(columns)
    ts = sympy.symbols(f"t1:{n + 1}")
    ys = sympy_symbols(m)
    eqs = [y - sympy.Mul(*[t ** a for t, a in zip(ts, col)]) for y, col in zip(ys, columns)]
    E = sympy.groebner(eqs, *ts, *ys, order="lex")
    elim = [g for g in E.exprs if not (g.free_symbols & set(ts))]
    if not elim:
        return set()
    G = sympy.groebner(elim, *ys, order=order)
    return from_sympy_gb(G, ys, order)


def brute_force_partial_orders(n):
    """Count strict partial orders on n labeled points by testing every relation."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for bits in range(1 << len(pairs)):
        rel = {pairs[k] for k in range(len(pairs)) if bits >> k & 1}
        if any((j, i) in rel for i, j in rel):
            continue
        if all((i, l) in rel for i, j in rel for k, l in rel if j == k):
            count += 1
    return count


def brute_force_strong_peo(G):
    """Search every vertex order for one that satisfies the strong PEO conditions.

    Conditions written directly from the definition, without the package's
    checker: each vertex's later neighbours form a clique, and for
    ``i < j < k < l`` with ``v_i v_k``, ``v_i v_l``, ``v_j v_k`` edges,
    ``v_j v_l`` is an edge.
    """
    n = G.n
    adj = [[G.has_edge(u, v) for v in range(n)] for u in range(n)]
    for order in itertools.permutations(range(n)):
        ok = True
        for p in range(n):
            later = [order[q] for q in range(p + 1, n) if adj[order[p]][order[q]]]
            if any(not adj[a][b] for a, b in itertools.combinations(later, 2)):
                ok = False
                break
        if not ok:
            continue
        if all(adj[order[j]][order[l]]
               for i, j, k, l in itertools.combinations(range(n), 4)
               if adj[order[i]][order[k]] and adj[order[i]][order[l]] and adj[order[j]][order[k]]):
            return order
    return None
