import itertools
from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from multitoric.errors import CycleDetected, IndexOutOfRange, InvalidOrderHint, SizeLimitExceeded
from multitoric.posets import (Poset, antichain_poset, canonical_form, chain_poset,
                               comparability_graph, count_multichains, disjoint_union,
                               enumerate_multichains, enumerate_posets, enumerate_strict_chains,
                               poset_from_covers)
from oracles import brute_force_partial_orders

INTRO = poset_from_covers(3, [(1, 0), (1, 2)])  # x2 < x1, x2 < x3
FINAL = poset_from_covers(5, [(0, 1), (1, 2), (0, 3), (3, 4)])

posets_upto_4 = st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(enumerate_posets(n))))


def test_intro_poset_relation():
    assert INTRO.lt(1, 0) and INTRO.lt(1, 2)
    assert not INTRO.comparable(0, 2)
    assert comparability_graph(INTRO).edges == [(0, 1), (1, 2)]


def test_covers_and_closure():
    P = poset_from_covers(3, [(0, 1), (1, 2)])
    assert P.lt(0, 2)
    assert P.covers == [(0, 1), (1, 2)]
    assert comparability_graph(P).edges == [(0, 1), (0, 2), (1, 2)]
    assert comparability_graph(antichain_poset(2)).edges == []


def test_cover_errors():
    with pytest.raises(CycleDetected):
        poset_from_covers(3, [(0, 1), (1, 2), (2, 0)])
    with pytest.raises(IndexOutOfRange):
        poset_from_covers(2, [(0, 2)])


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 3), (3, 19), (4, 219)])
def test_poset_counts_match_brute_force(n, expected):
    assert brute_force_partial_orders(n) == expected
    assert sum(1 for _ in enumerate_posets(n)) == expected


def test_poset_counts_n5_n6():
    # labeled posets on 5 and 6 points (OEIS A001035)
    assert sum(1 for _ in enumerate_posets(5)) == 4231
    assert sum(1 for _ in enumerate_posets(6)) == 130023


def test_enumeration_guard():
    with pytest.raises(SizeLimitExceeded):
        next(enumerate_posets(7))


@pytest.mark.parametrize("n", range(1, 6))
def test_enumerated_posets_are_distinct_and_valid(n):
    seen = set()
    for P in enumerate_posets(n):
        P.check()
        seen.add(P.below)
    assert len(seen) == sum(1 for _ in enumerate_posets(n))


@pytest.mark.parametrize("n, classes", [(1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_canonical_form_counts_unlabeled_posets(n, classes):
    keys = set()
    for P in enumerate_posets(n):
        key, order = canonical_form(P)
        assert P.relabel(order).below == key
        keys.add(key)
    assert len(keys) == classes


@settings(max_examples=100, deadline=None)
@given(posets_upto_4, st.data())
def test_canonical_form_is_invariant(P, data):
    perm = data.draw(st.permutations(list(range(P.n))))
    Q = P.relabel(perm)
    assert canonical_form(Q)[0] == canonical_form(P)[0]
    D1 = nx.DiGraph([(i, j) for i in range(P.n) for j in range(P.n) if P.lt(i, j)])
    D2 = nx.DiGraph([(i, j) for i in range(Q.n) for j in range(Q.n) if Q.lt(i, j)])
    D1.add_nodes_from(range(P.n))
    D2.add_nodes_from(range(Q.n))
    assert nx.is_isomorphic(D1, D2)


def test_intro_multichains_d3():
    F = enumerate_multichains(INTRO, 3)
    assert [c.elems for c in F] == [(0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1),
                                    (1, 1, 2), (1, 2, 2), (2, 2, 2)]
    assert F.columns()[1] == (2, 1, 0)


def test_small_multichain_families():
    assert [c.elems for c in enumerate_multichains(chain_poset(2), 2)] == [(0, 0), (0, 1), (1, 1)]
    assert [c.elems for c in enumerate_multichains(antichain_poset(2), 2)] == [(0, 0), (1, 1)]
    with pytest.raises(ValueError):
        enumerate_multichains(chain_poset(2), 1)
    with pytest.raises(InvalidOrderHint):
        enumerate_multichains(chain_poset(3), 2, order_hint=[0, 0, 1])


def test_strict_chains():
    assert [c.elems for c in enumerate_strict_chains(chain_poset(3), 2)] == [(0, 1), (0, 2), (1, 2)]
    assert len(enumerate_strict_chains(antichain_poset(2), 2)) == 0
    F = enumerate_strict_chains(FINAL, 2)
    assert sorted(c.elems for c in F) == comparability_graph(FINAL).edges


def brute_force_multichains(P, d):
    out = set()
    for combo in itertools.combinations_with_replacement(range(P.n), d):
        if all(P.leq(combo[k], combo[k + 1]) or P.leq(combo[k + 1], combo[k])
               for k in range(d - 1)) and all(P.comparable(a, b) or a == b
                                              for a, b in itertools.combinations(combo, 2)):
            out.add(combo)
    return out


@settings(max_examples=120, deadline=None)
@given(posets_upto_4, st.integers(2, 4))
def test_multichain_family_invariants(P, d):
    F = enumerate_multichains(P, d)
    assert {c.elems for c in F} == brute_force_multichains(P, d)
    assert F.m == count_multichains(P, d)
    rhos = F.columns()
    assert len(set(rhos)) == len(rhos)
    for a, b in zip(rhos, rhos[1:]):
        diff = [x - y for x, y in zip(a, b)]
        assert next(x for x in diff if x) > 0
    for c in F:
        assert c.is_valid(P) and sum(c.rho) == d


@pytest.mark.parametrize("n, d", [(1, 2), (3, 2), (3, 3), (4, 3), (5, 2)])
def test_chain_multichain_count(n, d):
    assert enumerate_multichains(chain_poset(n), d).m == comb(n + d - 1, d)


def test_order_hint_relabels():
    P = FINAL
    hint = [2, 1, 0, 4, 3]
    F = enumerate_multichains(P, 2, order_hint=hint)
    assert F.relabeling == tuple(hint)
    assert F.poset == P.relabel(hint)
    assert F.m == enumerate_multichains(P, 2).m


def test_disjoint_union():
    P = disjoint_union(chain_poset(2), chain_poset(3))
    assert P.n == 5 and len(P.components()) == 2
    assert all(Q.is_chain() for Q in (chain_poset(2),))
