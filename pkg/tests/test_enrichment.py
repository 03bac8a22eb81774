import numpy as np
import pytest

import oracle
from heytingkit.core import AlgebraEmbedding, boolean, chain
from heytingkit.enrichment import (
    EPair, TauExpansion, TildeTable, box_operator, canonical_packing, check_packing, check_tilde,
    closure_trichotomy, e_pairs, enriches, enrichment, km_conditions, pair_from_tilde, tilde_closure,
    tilde_expansion, tilde_from_pair,
)
from heytingkit.errors import IncompatibleTau, InvalidEPair, InvalidTilde
from heytingkit.filters import special_filters

import systematic

SMALL = [(n, A) for n, A in systematic.fixtures() if A.n <= 8]

# box tables per fixture, from oracle.enrichments
FROZEN_BOX = {
    "chain 2": ["1", "1"],
    "chain 3": ["a", "1", "1"],
    "chain 6": ["a", "b", "c", "d", "1", "1"],
    "boolean 2": ["1", "1", "1", "1"],
    "product(chain 2, chain 3)": ["(1,a)", "(1,1)", "(1,1)", "(1,a)", "(1,1)", "(1,1)"],
    "product(chain 3, boolean 1)": ["(a,1)", "(a,1)", "(1,1)", "(1,1)", "(1,1)", "(1,1)"],
}


def test_enriches_examples():
    A = chain(3)
    assert enriches(A, A.top, A.top)
    assert enriches(A, A.index("a"), A.top)
    B = boolean(2)
    assert not enriches(B, B.bot, B.index("a"))


def test_enrichment_examples():
    A = chain(3)
    assert enrichment(A, "a") == A.top
    B = boolean(2)
    assert enrichment(B, "0") == B.top


@pytest.mark.parametrize("name", sorted(FROZEN_BOX))
def test_frozen_box(name):
    A = dict(systematic.fixtures())[name]
    assert [A.labels[v] for v in box_operator(A)] == FROZEN_BOX[name]


@pytest.mark.parametrize("name,A", SMALL)
def test_enrichment_matches_oracle(name, A):
    L = oracle.from_algebra(A)
    for a in range(A.n):
        assert [enrichment(A, a)] == oracle.enrichments(L, a)
        assert sorted((p.a, p.a_star) for p in e_pairs(A) if p.a == a) == [(a, b) for b in oracle.enrichments(L, a)]


def test_box_examples():
    assert box_operator(chain(2)) == (1, 1)
    A = chain(3)
    assert box_operator(A) == (1, 2, 2)
    assert km_conditions(A, box_operator(A))
    assert not km_conditions(A, (0, 1, 2))


def test_tilde_from_pair_examples():
    A = chain(3)
    t = tilde_from_pair(EPair(A, 1, 2))
    assert t.t == (2, 2, 1)
    assert tilde_from_pair(EPair(A, 2, 2)).t == (2, 2, 2)
    B = boolean(2)
    assert tilde_from_pair(EPair(B, B.bot, B.top)).t == tuple(int(v) for v in B.neg)
    with pytest.raises(InvalidEPair):
        tilde_from_pair(EPair(B, B.bot, B.index("a")))


def test_pair_from_tilde_examples():
    B = boolean(2)
    p = pair_from_tilde(TildeTable(B, B.neg))
    assert (p.a, p.a_star) == (B.bot, B.top)
    A = chain(3)
    p = pair_from_tilde(TildeTable(A, (2, 2, 2)))
    assert (p.a, p.a_star) == (2, 2)
    p = pair_from_tilde(TildeTable(A, (2, 2, 1)))
    assert (p.a, p.a_star) == (1, 2)
    with pytest.raises(InvalidTilde):
        pair_from_tilde(TildeTable(A, (0, 0, 0)))


def test_check_tilde_examples():
    B = boolean(2)
    assert check_tilde(B, B.neg).ok
    A = chain(3)
    report = check_tilde(A, (0, 0, 0))
    assert not report.is_tilde and report.failed() == ["def-d"]
    report = check_tilde(A, (2, 2, 1))
    assert report.ok
    # the interval [t(1), t(0)] = [a, 1] is the 2-element Boolean algebra
    assert report.properties["k"]
    with pytest.raises(InvalidTilde):
        check_tilde(A, (0, 1))


@pytest.mark.parametrize("name,A", [(n, A) for n, A in SMALL if A.n <= 4])
def test_tildes_are_exactly_the_pair_tables(name, A):
    """Every table passing the definition comes from an E-pair (all n^n tables scanned)."""
    from itertools import product as tables

    found = {t for t in tables(range(A.n), repeat=A.n) if check_tilde(A, t).is_tilde}
    assert found == {tilde_from_pair(p).t for p in e_pairs(A)}


def test_tilde_expansion():
    A = chain(3)
    E = tilde_expansion(A, "a").validate()
    assert E.tau == 1 and E.tilde.t == (2, 2, 1)
    with pytest.raises(InvalidTilde):
        TauExpansion(A, 0, TildeTable(A, (2, 2, 1))).validate()


def test_self_packing():
    A = chain(3)
    E = tilde_expansion(A, "a")
    assert check_packing(TauExpansion(A, 1), E, AlgebraEmbedding(A, A, range(3)))


def test_canonical_packing_chain3():
    inner, outer, h = canonical_packing(chain(3), "a")
    assert check_packing(inner, outer, h)


def test_boolean_two_element_not_packed():
    B = boolean(2)
    A = chain(2)
    e = AlgebraEmbedding(A, B, (B.bot, B.top))
    outer = TauExpansion(B, B.bot, TildeTable(B, B.neg))
    image = list(e.map)
    assert closure_trichotomy(outer, image) == (True, True)
    assert tilde_closure(B, B.bot, B.neg, image) == [B.bot, B.top]
    assert not check_packing(TauExpansion(A, A.bot), outer, e)


def test_packing_needs_matching_tau():
    B = chain(3)
    A = chain(2)
    e = AlgebraEmbedding(A, B, (0, 2))
    outer = tilde_expansion(B, "a")
    with pytest.raises(IncompatibleTau):
        check_packing(TauExpansion(A, 0), outer, e)


def test_chain2_packs_into_chain3():
    B = chain(3)
    e = AlgebraEmbedding(chain(2), B, (0, 2))
    outer = TauExpansion(B, 0, tilde_from_pair(EPair(B, 0, 1)))
    assert check_packing(TauExpansion(e.source, 0), outer, e)


def test_meet_of_f_a_in_proper_extension():
    """⋀F_a (of A, taken in B) need not be the enrichment of a in B.

    chain 2 inside chain 3: F_0 of A is {1}, so its meet is 1, while 0 is
    enriched by a in chain 3."""
    A, B = chain(2), chain(3)
    e = AlgebraEmbedding(A, B, (0, 2))
    _, f_0 = special_filters(A, 0)
    meet_in_b = B.meet_all(e.map[y] for y in f_0.elements())
    assert meet_in_b == B.top
    assert enrichment(B, e.map[0]) == B.index("a")
    L = oracle.from_algebra(B)
    assert oracle.enrichments(L, 0) == [1]


def test_meet_of_f_a_with_equal_algebras():
    for name, A in systematic.fixtures():
        for a in range(A.n):
            assert A.meet_all(special_filters(A, a)[1].elements()) == enrichment(A, a), name


def test_tilde_tables_antitone_and_quasi_identity():
    for name, A in SMALL:
        for p in e_pairs(A):
            t = np.array(tilde_from_pair(p).t)
            assert (~A.leq | A.leq[t[None, :], t[:, None]]).all(), name
            assert A.neg[t[A.bot]] == A.bot or A.n == 1
