import pytest

import oracle
from heytingkit.core import AlgebraEmbedding, boolean, chain, identity_embedding
from heytingkit.errors import PreconditionViolated
from heytingkit.filters import (
    excluding_and_max, excluding_masks, extend_prime_filter, generated_filter, is_filter, is_prime,
    pair_spectrum_maps, prime_filters, special_filters,
)

import systematic

SMALL = [(n, A) for n, A in systematic.fixtures() if A.n <= 8]


def labels(filters):
    return [f.labels() for f in filters]


def test_generated_filter():
    A = chain(3)
    assert generated_filter(A, [A.index("a")]).labels() == ["a", "1"]
    B = boolean(2)
    assert generated_filter(B, [B.index("a"), B.index("b")]).members == (1 << B.n) - 1
    assert generated_filter(B, []).labels() == ["1"]


def test_prime_filter_examples():
    assert labels(prime_filters(chain(2))) == [["1"]]
    assert labels(prime_filters(chain(3))) == [["1"], ["a", "1"]]
    B = boolean(2)
    assert sorted(labels(prime_filters(B))) == [["a", "1"], ["b", "1"]]
    assert not is_prime(B, B.bits_of([B.top]))


def test_prime_filter_order():
    S = prime_filters(chain(3))
    assert S.order[0, 1] and not S.order[1, 0]
    assert S.maximal(S.full) == 0b10


@pytest.mark.parametrize("name,A", SMALL)
def test_prime_filters_match_oracle(name, A):
    L = oracle.from_algebra(A)
    expected = {frozenset(F) for F in oracle.prime_filters(L)}
    got = {frozenset(F.elements()) for F in prime_filters(A)}
    assert got == expected
    assert {frozenset(F) for F in oracle.filters(L)} == {
        frozenset(A.elements_of(bits)) for bits in range(1, 1 << A.n) if is_filter(A, bits)
    }


def test_excluding_examples():
    A = chain(3)
    assert excluding_and_max(A, "1") == ([], [])
    excl, top = excluding_and_max(A, "a")
    assert labels(excl) == [["1"]] and labels(top) == [["1"]]
    B = boolean(2)
    excl, top = excluding_and_max(B, "0")
    assert len(excl) == 2 and len(top) == 2


@pytest.mark.parametrize("name,A", SMALL)
def test_max_excluding_matches_oracle(name, A):
    L = oracle.from_algebra(A)
    S = prime_filters(A)
    for a in range(A.n):
        _, top = excluding_masks(S, a)
        got = {frozenset(S.filters[i].elements()) for i in S.points(top)}
        assert got == set(oracle.max_excluding(L, a))


def test_special_filter_examples():
    A = chain(3)
    x_a, f_a = special_filters(A, "a")
    assert x_a.labels() == ["1"] and f_a.labels() == ["1"]
    B = boolean(2)
    x_0, f_0 = special_filters(B, "0")
    assert x_0.labels() == ["1"] and f_0.labels() == ["1"]
    x_top, f_top = special_filters(B, "1")
    assert x_top.members == (1 << B.n) - 1 and f_top.labels() == ["1"]


@pytest.mark.parametrize("name,A", SMALL)
def test_f_a_matches_oracle(name, A):
    L = oracle.from_algebra(A)
    for a in range(A.n):
        _, f_a = special_filters(A, a)
        assert frozenset(f_a.elements()) == oracle.f_a(L, a)


def test_identity_spectrum_maps():
    maps = pair_spectrum_maps(identity_embedding(chain(3)))
    assert maps.phi == (0, 1)
    assert all(maps.phi_tilde(b) == b == maps.phi_inv(b) for b in range(4))


def test_chain2_in_chain3():
    e = AlgebraEmbedding(chain(2), chain(3), (0, 2))
    maps = pair_spectrum_maps(e)
    assert maps.phi == (0, 0)
    assert maps.is_surjective


def test_two_element_in_boolean():
    B = boolean(2)
    e = AlgebraEmbedding(chain(2), B, (B.bot, B.top))
    maps = pair_spectrum_maps(e)
    SA, SB = maps.source, maps.target
    for x in range(2):
        assert maps.phi_tilde(SB.containing(e.map[x])) == SA.containing(x)


def test_extend_prime_filter():
    A, B = chain(2), chain(3)
    e = AlgebraEmbedding(A, B, (0, 2))
    G = extend_prime_filter(e, prime_filters(A).members[0], "0")
    assert G.labels() in (["1"], ["a", "1"])
    assert [x for x in range(A.n) if e.map[x] in G] == [A.top]
    with pytest.raises(PreconditionViolated):
        extend_prime_filter(e, prime_filters(A).members[0], "1")


@pytest.mark.parametrize("name,e", [(n, e) for n, e in systematic.embedded_pairs() if e.target.n <= 6])
def test_extend_prime_filter_everywhere(name, e):
    A = e.source
    SA = prime_filters(A)
    for F in SA.members:
        for a in range(A.n):
            if F >> a & 1:
                continue
            G = extend_prime_filter(e, F, a)
            assert e.map[a] not in G
            assert A.bits_of(x for x in range(A.n) if e.map[x] in G) == F


def test_bottom_extension_gives_surjectivity():
    for name, e in systematic.embedded_pairs():
        for F in prime_filters(e.source).members:
            extend_prime_filter(e, F, e.source.bot)
        assert pair_spectrum_maps(e).is_surjective
