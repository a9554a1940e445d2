import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog

from conftest import DATA
from multitoric.errors import NotConnected
from multitoric.formats import read_poset
from multitoric.posets import (antichain_poset, chain_poset, disjoint_union, enumerate_posets,
                               poset_from_covers)
from multitoric.normality import (GradedMonoidView, holes_up_to, incomparable_hole_vectors,
                                   is_disjoint_union_of_chains, minimal_holes, multichain_view,
                                   normalization_equals_veronese)

STAR = read_poset(DATA / "star.poset")
INTRO = read_poset(DATA / "intro.poset")

posets_upto_4 = st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(enumerate_posets(n))))


def test_disjoint_union_of_chains():
    assert is_disjoint_union_of_chains(disjoint_union(chain_poset(2), chain_poset(1)))
    assert not is_disjoint_union_of_chains(INTRO)
    assert is_disjoint_union_of_chains(antichain_poset(3))


def test_lattice_membership():
    M = multichain_view(INTRO, 3)
    assert M.in_ZA((1, 1, 1)) and M.in_ZA((5, -1, -1))
    assert not M.in_ZA((1, 1, 0))
    assert M.in_ZA((2, 1, 0))
    A2 = multichain_view(antichain_poset(2), 2)
    assert not A2.in_ZA((1, 1))
    assert A2.in_ZA((2, 2))


def test_cone_membership():
    M = multichain_view(STAR, 2)
    # the constant multichains give every nonnegative vector of sum d
    assert M.in_cone((Fraction(1, 2), Fraction(1, 2), 1))
    assert not M.in_cone((3, -1, 0))
    assert M.in_cone((Fraction(3, 2), Fraction(1, 2), 0))  # midpoint of (2,0,0) and (1,1,0)


def test_monoid_membership():
    M = multichain_view(STAR, 2)
    assert not M.in_monoid((0, 1, 1))
    assert M.in_monoid((3, 1, 0))
    assert M.in_monoid((0, 0, 0))


def test_star_holes():
    M = multichain_view(STAR, 2)
    holes = holes_up_to(M, 1)
    assert [h.vector for h in holes] == [(0, 1, 1)]
    assert holes[0].to_json() == {"degree": 1, "vector": [0, 1, 1], "in_ZA": True,
                                  "in_cone": True, "in_monoid": False}
    assert normalization_equals_veronese(M, STAR, 3)


def test_intro_holes():
    M = multichain_view(INTRO, 3)
    holes = minimal_holes(holes_up_to(M, 1))
    assert (2, 0, 1) in [h.vector for h in holes]
    assert normalization_equals_veronese(M, INTRO, 3)


def test_chains_have_no_holes():
    P = disjoint_union(chain_poset(2), chain_poset(2))
    for d in (2, 3):
        assert holes_up_to(multichain_view(P, d), 4) == []
    assert normalization_equals_veronese(multichain_view(chain_poset(3), 2), chain_poset(3), 3)


def test_normalization_needs_connected_poset():
    with pytest.raises(NotConnected):
        normalization_equals_veronese(multichain_view(antichain_poset(2), 2), antichain_poset(2))


def test_incomparable_hole_vectors():
    assert incomparable_hole_vectors(STAR, 2) == [(0, 1, 1), (0, 1, 1)]
    assert incomparable_hole_vectors(INTRO, 3) == [(1, 0, 2), (2, 0, 1)]


def brute_monoid(cols, z, t):
    return any(tuple(map(sum, zip(*combo))) == tuple(z)
               for combo in itertools.combinations_with_replacement(cols, t))


def scipy_cone(cols, q):
    A = np.array(cols, dtype=float).T
    res = linprog(np.zeros(A.shape[1]), A_eq=A, b_eq=np.array(q, dtype=float),
                  bounds=[(0, None)] * A.shape[1], method="highs")
    return res.status == 0


@settings(max_examples=80, deadline=None)
@given(posets_upto_4, st.integers(2, 3))
def test_membership_oracles(P, d):
    M = multichain_view(P, d)
    cols = M.config.columns
    for t in (1, 2):
        for z in M.candidates(t):
            mono = M.in_monoid(z)
            assert mono == brute_monoid(cols, z, t)
            cone = M.in_cone(z)
            assert cone == scipy_cone(cols, z)
            w, sep = M.cone_certificate(z)
            if w is not None:
                assert all(x >= 0 for x in w)
                assert tuple(sum(w[j] * cols[j][i] for j in range(len(cols))) for i in range(len(z))) == z
            if mono:
                assert M.in_ZA(z) and cone


@settings(max_examples=80, deadline=None)
@given(posets_upto_4, st.integers(2, 3))
def test_holes_iff_not_chains(P, d):
    holes = holes_up_to(multichain_view(P, d), 2)
    assert (not holes) == is_disjoint_union_of_chains(P)


def test_view_rejects_negative_columns():
    from multitoric.toric import Configuration
    with pytest.raises(ValueError):
        GradedMonoidView(Configuration(((1, 0), (2, -1))))
