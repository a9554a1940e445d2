import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA
from multitoric.binomials import PureBinomial
from multitoric.errors import NotChordal, NotInducedEvenCycle, SizeLimitExceeded
from multitoric.formats import read_graph, read_poset
from multitoric.graphs import Graph, find_peo, induced_cycles, verify_strong_peo
from multitoric.posets import (antichain_poset, chain_poset, comparability_graph,
                               enumerate_multichains, enumerate_posets, poset_from_covers)
from multitoric.theorems import (abar_configuration, compare_example_d2, even_cycle_witness,
                                 example_d2_basis, rev_gb, rev_variable_order,
                                 verify_theorem_main, verify_theorem_sc)
from multitoric.toric import configuration_from_family, fiber, lemma1_binomial, lemma1_check

INTRO_MATRIX = [[3, 2, 1, 0, 0, 0, 0],
                [0, 1, 2, 3, 2, 1, 0],
                [0, 0, 0, 0, 1, 2, 3]]
# 6-cycle x1 < x2 > x3 < x4 > x5 < x6 > x1 as a crown poset
CROWN = poset_from_covers(6, [(0, 1), (2, 1), (2, 3), (4, 3), (4, 5), (0, 5)])

posets_upto_4 = st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(enumerate_posets(n))))


def y(F, *pairs):
    """Exponent vector of a product of variables ``y_{ij}`` given by 1-based pairs."""
    e = [0] * F.m
    for i, j in pairs:
        e[F.index_of((i - 1, j - 1))] += 1
    return tuple(e)


def test_intro_rev_order_is_printed_matrix():
    po = rev_variable_order(read_poset(DATA / "intro.poset"), 3)
    cols = po.family.columns()
    assert [list(r) for r in zip(*cols)] == INTRO_MATRIX


def test_rev_order_errors_and_trivial_case():
    with pytest.raises(NotChordal):
        rev_variable_order(read_poset(DATA / "c4.poset"), 2)
    po = rev_variable_order(chain_poset(1), 2)
    assert po.family.m == 1 and po.order.nvars == 1


def test_chain_all_positive():
    rep = verify_theorem_main(chain_poset(3), (2, 3))
    assert rep.verdicts == [True] * 5
    assert rep.gb_max_degree == {2: 2, 3: 2}


def test_c4_all_negative_with_even_cycle_witness():
    P = read_poset(DATA / "c4.poset")
    rep = verify_theorem_main(P, (2,))
    assert rep.verdicts == [False] * 3 and rep.consistent
    w = rep.witnesses["even_cycle_d2"]
    assert w["lemma1"]
    A = rep.configurations[2]
    left = [j - 1 for j in w["left"]]
    right = [j - 1 for j in w["right"]]
    b = lemma1_binomial(A, left, right)
    assert A.in_ideal(b) and b.degree == 3
    gen = rep.witnesses["generator_d2"]
    assert A.in_ideal(gen) and gen.degree >= 3


def test_final_example_poset_all_positive():
    rep = verify_theorem_main(read_poset(DATA / "two_branches.poset"), (2,))
    assert rep.verdicts == [True] * 3


def test_even_cycle_witness_on_c4():
    P = read_poset(DATA / "c4.poset")
    hole = find_peo(comparability_graph(P)).hole
    for d, total in ((2, (2, 1, 2, 1)), (3, (3, 1, 3, 2))):
        F = enumerate_multichains(P, d)
        A = configuration_from_family(F)
        left, right, chains = even_cycle_witness(P, hole, d, F)
        assert len(chains) == 6
        u = [left.count(j) for j in range(A.m)]
        v = [right.count(j) for j in range(A.m)]
        assert A.image(u) == A.image(v) == total
        assert lemma1_check(A, left, right)
        # the fiber has at least two components under quadratic moves
        assert len(fiber(A, total).components(2)) >= 2


def test_even_cycle_witness_on_induced_six_cycle():
    cyc = induced_cycles(comparability_graph(CROWN))
    assert len(cyc) == 1 and len(cyc[0]) == 6
    F = enumerate_multichains(CROWN, 2)
    left, right, chains = even_cycle_witness(CROWN, cyc[0], 2, F)
    assert len(chains) == 8
    assert lemma1_check(configuration_from_family(F), left, right)


def test_even_cycle_witness_rejects_non_induced_cycles():
    with pytest.raises(NotInducedEvenCycle):
        even_cycle_witness(chain_poset(4), [0, 1, 2, 3], 2)
    with pytest.raises(NotInducedEvenCycle):
        even_cycle_witness(read_poset(DATA / "c4.poset"), [0, 1, 2], 2)


def test_example_d2_on_three_chain():
    P = chain_poset(3)
    F = enumerate_multichains(P, 2)
    expected = {
        PureBinomial(y(F, (1, 2), (1, 3)), y(F, (1, 1), (2, 3))),
        PureBinomial(y(F, (2, 2), (1, 3)), y(F, (1, 2), (2, 3))),
        PureBinomial(y(F, (1, 3), (2, 3)), y(F, (3, 3), (1, 2))),
        PureBinomial(y(F, (1, 2), (1, 2)), y(F, (1, 1), (2, 2))),
        PureBinomial(y(F, (1, 3), (1, 3)), y(F, (1, 1), (3, 3))),
        PureBinomial(y(F, (2, 3), (2, 3)), y(F, (2, 2), (3, 3))),
    }
    assert set(example_d2_basis(P)) == expected
    po, gb = rev_gb(P, 2)
    assert set(gb.basis) == expected


def test_example_d2_small_cases():
    assert example_d2_basis(antichain_poset(2)) == []
    P = read_poset(DATA / "two_branches.poset")
    F = enumerate_multichains(P, 2)
    assert PureBinomial(y(F, (1, 4), (1, 5)), y(F, (1, 1), (4, 5))) in example_d2_basis(P)
    with pytest.raises(NotChordal):
        example_d2_basis(read_poset(DATA / "c4.poset"))
    # two-chain case: the single binomial y12^2 - y11 y22
    F = enumerate_multichains(chain_poset(2), 2)
    assert example_d2_basis(chain_poset(2)) == [PureBinomial(y(F, (1, 2), (1, 2)), y(F, (1, 1), (2, 2)))]


@pytest.mark.parametrize("n", range(1, 5))
def test_seven_families_form_a_groebner_basis(n):
    # the families always form a Gröbner basis whose interreduction is the reduced one
    for P in enumerate_posets(n):
        if not find_peo(comparability_graph(P)).chordal:
            continue
        cmp = compare_example_d2(P)
        assert cmp.is_groebner and cmp.reduced_subset and cmp.interreduced_equal


def test_abar_configuration():
    A = abar_configuration(Graph.from_edges(2, [(0, 1)]))
    assert A.columns == ((2, 0), (0, 2), (1, 1))
    T = abar_configuration(Graph.complete(3))
    assert T.m == 6 and all(sum(c) == 2 for c in T.columns)
    for P in enumerate_posets(4):
        cols = abar_configuration(comparability_graph(P)).columns
        assert sorted(cols) == sorted(enumerate_multichains(P, 2).columns())


def test_theorem_sc_examples():
    rep = verify_theorem_sc(read_graph(DATA / "sun3.graph"))
    assert rep.verdicts == [False] * 3
    assert rep.witness["kind"] == "sun"
    assert rep.witness["left"] == [[1, 2], [3, 4], [5, 6]]
    assert rep.witness["right"] == [[1, 6], [2, 3], [4, 5]]
    rep = verify_theorem_sc(read_graph(DATA / "c5.graph"))
    assert rep.verdicts == [False] * 3
    assert rep.witness["kind"] == "odd_cycle"
    assert rep.witness["left"] == [[1, 5], [1, 2], [3, 4]]
    assert rep.witness["right"] == [[1, 1], [2, 3], [4, 5]]
    rep = verify_theorem_sc(read_graph(DATA / "two_triangles.graph"))
    assert rep.verdicts == [True] * 3
    assert verify_strong_peo(rep.graph, rep.strong.speo)
    with pytest.raises(SizeLimitExceeded):
        verify_theorem_sc(Graph.from_edges(8, []))


@settings(max_examples=60, deadline=None)
@given(posets_upto_4)
def test_cached_main_report_matches_direct(P):
    cache = {}
    direct = verify_theorem_main(P, (2, 3))
    cached = verify_theorem_main(P, (2, 3), cache=cache)
    again = verify_theorem_main(P, (2, 3), cache=cache)
    assert direct.verdicts == cached.verdicts == again.verdicts
    assert direct.gb_max_degree == cached.gb_max_degree
    for rep in (cached, again):
        for d, q in rep.generation.items():
            if q.certificate is not None:
                assert rep.configurations[d].in_ideal(q.certificate)


@settings(max_examples=60, deadline=None)
@given(posets_upto_4)
def test_main_report_json_round_trip(P):
    rep = verify_theorem_main(P, (2, 3))
    obj = json.loads(json.dumps(rep.to_json()))
    assert obj["consistent"]
    if obj["speo"] is not None:
        assert verify_strong_peo(comparability_graph(P), [v - 1 for v in obj["speo"]])
    for d in (2, 3):
        cert = obj["generation"][str(d)]["certificate"]
        if cert is not None:
            assert rep.configurations[d].in_ideal(PureBinomial.from_json(cert))


def test_sc_report_json_round_trip():
    for name in ("sun3.graph", "c5.graph", "two_triangles.graph"):
        G = read_graph(DATA / name)
        obj = json.loads(json.dumps(verify_theorem_sc(G).to_json()))
        speo = obj["strongly_chordal"]["speo"]
        if speo is not None:
            assert verify_strong_peo(G, [v - 1 for v in speo])
        assert obj["consistent"]
