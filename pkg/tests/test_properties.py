"""Property tests over random finite Heyting algebras.

Every finite distributive lattice is the lattice of up-sets of a finite
poset, so drawing a random poset on at most four points reaches them all
up to that size (the up-set lattices have between 2 and 16 elements).
"""
import numpy as np
from hypothesis import given, strategies as st

from heytingkit.calculus import ROOT, Rank
from heytingkit.core import build_algebra, find_isomorphism
from heytingkit.enrichment import e_pairs, enriches, enrichment, pair_from_tilde, tilde_from_pair
from heytingkit.filters import special_filters
from heytingkit.formula import (
    P0, P1, P2, TAU, TOP, conj, contains, disj, imp, neg, parse_formula, replace, tilde, to_text,
)
from heytingkit.stone import delta_algebra, delta_h_bits, stone_embed, upsets


@st.composite
def posets(draw, max_points=4):
    n = draw(st.integers(1, max_points))
    below = set()
    for j in range(n):
        for i in range(j):
            if draw(st.booleans()):
                below.add((i, j))
    # transitive closure keeps it a partial order since i < j throughout
    changed = True
    while changed:
        changed = False
        for i, j in list(below):
            for k, m in list(below):
                if j == k and (i, m) not in below:
                    below.add((i, m))
                    changed = True
    return n, below


def upset_lattice(n, below):
    sets = []
    for bits in range(1 << n):
        if all(not (bits >> i & 1) or bits >> j & 1 for i, j in below):
            sets.append(bits)
    labels = [format(b, f"0{n}b") for b in sets]
    pairs = [(labels[x], labels[y]) for x, a in enumerate(sets) for y, b in enumerate(sets) if a & ~b == 0]
    return build_algebra(labels, pairs)


algebras = posets().map(lambda p: upset_lattice(*p))


@given(algebras)
def test_residuation(A):
    lhs = A.leq[A.meet[:, :, None], np.arange(A.n)[None, None, :]]
    rhs = A.leq[:, A.imp]
    assert (lhs == rhs).all()


@given(algebras)
def test_h_is_onto_upsets(A):
    sd = stone_embed(A)
    assert sorted(sd.h_bits(x) for x in range(A.n)) == sorted(upsets(sd.spectrum))


@given(algebras)
def test_delta_h_identity(A):
    sd = stone_embed(A)
    S = sd.spectrum
    for x in range(A.n):
        maximal = 0
        for i, F in enumerate(S.filters):
            if x not in F and all(x in S.filters[j] for j in S.points(S.strictly_above[i])):
                maximal |= 1 << i
        assert delta_h_bits(sd, x) == sd.h_bits(x) | maximal


@given(algebras)
def test_enrichment_unique_dense_and_meet(A):
    for a in range(A.n):
        stars = [b for b in range(A.n) if enriches(A, a, b)]
        assert stars == [enrichment(A, a)]
        b = stars[0]
        assert A.leq[a, b] and A.imp[b, a] == a
        assert A.meet_all(special_filters(A, a)[1].elements()) == b


@given(algebras)
def test_tilde_round_trip_and_antitone(A):
    for p in e_pairs(A):
        t = tilde_from_pair(p)
        back = pair_from_tilde(t)
        assert (back.a, back.a_star) == (p.a, p.a_star)
        table = np.array(t.t)
        assert (~A.leq | A.leq[table[None, :], table[:, None]]).all()


@given(algebras)
def test_tilde_determined_by_top(A):
    by_top = {}
    for p in e_pairs(A):
        t = tilde_from_pair(p).t
        assert by_top.setdefault(t[A.top], t) == t


@given(algebras)
def test_delta_of_finite_algebra_is_isomorphic(A):
    D, h = delta_algebra(A)
    assert find_isomorphism(A, D) is not None and h.is_onto()


@given(algebras)
def test_tower_composition_associates(A):
    A1, e01 = delta_algebra(A)
    A2, e12 = delta_algebra(A1)
    A3, e23 = delta_algebra(A2)
    assert e01.compose(e12).compose(e23).map == e01.compose(e12.compose(e23)).map


ranks = st.builds(Rank, st.integers(0, 4), st.integers(0, 4)).map(lambda r: ROOT if r.m == 0 or r.n == 0 else r)


@given(ranks, ranks, ranks)
def test_rank_order_is_partial_order(r, s, t):
    assert r.precedes(r) and ROOT.precedes(r)
    if r.precedes(s) and s.precedes(r):
        assert r == s
    if r.precedes(s) and s.precedes(t):
        assert r.precedes(t)


formulas = st.recursive(
    st.sampled_from([P0, P1, P2, TAU, TOP]),
    lambda sub: st.one_of(
        st.builds(conj, sub, sub), st.builds(disj, sub, sub), st.builds(imp, sub, sub),
        st.builds(neg, sub), st.builds(tilde, sub),
    ),
    max_leaves=12,
)


@given(formulas)
def test_print_parse_round_trip(f):
    assert parse_formula(to_text(f)) is f


@given(formulas, formulas)
def test_replace_absent_is_identity(f, g):
    target = tilde(tilde(tilde(tilde(P2))))
    if not contains(f, target):
        assert replace(f, target, g) is f
