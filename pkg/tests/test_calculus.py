import pytest

from heytingkit.calculus import (
    ROOT, Rank, a_star, c_instances, choose_gamma, completeness_spot_check, eliminate_tilde_tau, is_pure,
    maximal_set, proper_identities, purification_trace, purify, purify_step, rank, sound_in,
    tables_satisfying_proper_identities, validate_derivation, validate_semantics,
)
from heytingkit.core import boolean, chain
from heytingkit.corpus import corpus, corpus_entry, em_tau
from heytingkit.enrichment import EPair, TauExpansion, TildeTable, e_pairs, tilde_from_pair
from heytingkit.errors import MissingInterpretation, NoEligibleGamma, PreconditionViolated
from heytingkit.formula import P0, P1, TAU, TRUTH, disj, imp, neg, tilde
from heytingkit.hilbert import Calculus, and_intro, check_derivation, derive, km, premise_instance, refl

import systematic

NOT_TAU = tilde(TAU)
CORPUS = corpus()


def test_rank_examples():
    assert rank(derive(refl(P0))) == ROOT
    assert rank(corpus_entry("tau-gives-em").derivation) == Rank(1, 1)
    D = derive(refl(disj(disj(tilde(P0), NOT_TAU), tilde(tilde(P0)))))
    assert set(maximal_set(D)) == {tilde(P0), NOT_TAU, tilde(tilde(P0))}
    assert rank(D) == Rank(2, 1)


def test_rank_order():
    assert ROOT.precedes(Rank(1, 1))
    assert Rank(1, 5).precedes(Rank(2, 1))
    assert Rank(2, 1).precedes(Rank(2, 1))
    assert not Rank(2, 2).precedes(Rank(2, 1))
    assert str(Rank(2, 1)) == "(2,1)"


def test_purify_step_two_gammas():
    D = derive(and_intro(km("a", P0), km("a", P1)))
    assert rank(D) == Rank(1, 3)
    # the compiled proof states the (a) instance at p1 first
    assert D.steps[0].formula.args[0].args[0] is tilde(P1)
    assert choose_gamma(D) is tilde(P1)
    once = purify_step(D)
    assert rank(once) == Rank(1, 2)
    assert set(maximal_set(once)) == {NOT_TAU, tilde(P0)}
    twice = purify_step(once)
    assert maximal_set(twice) == [NOT_TAU]
    assert check_derivation(twice, Calculus.KM_TAU).valid


def test_purify_step_through_double_tilde():
    D = corpus_entry("through-double-tilde").derivation
    assert rank(D).m == 2
    after = purify_step(D)
    assert rank(after).m == 1
    assert check_derivation(after).valid


def test_choose_gamma_skips_premise_and_tau():
    D = corpus_entry("tau-gives-em").derivation
    with pytest.raises(NoEligibleGamma):
        choose_gamma(D)
    with pytest.raises(NoEligibleGamma):
        choose_gamma(derive(refl(P0)))
    alpha = imp(tilde(P0), P1)
    D = derive(premise_instance(alpha), premise=alpha)
    with pytest.raises(NoEligibleGamma):
        choose_gamma(D)


def test_purify_step_preconditions():
    with pytest.raises(PreconditionViolated):
        purify_step(derive(refl(P0)))
    with pytest.raises(PreconditionViolated):
        purify_step(derive(and_intro(km("a", P0), km("a", P1))), goal=P0)


def test_eliminate_tilde_tau_examples():
    D = corpus_entry("tau-gives-em").derivation
    assert c_instances(D) == [P0]
    A, bs = a_star(D)
    assert A is em_tau(P0) and bs == [P0]
    out = eliminate_tilde_tau(D)
    assert maximal_set(out) == [] and out.conclusion is D.conclusion
    assert check_derivation(out, Calculus.INT_TAU).valid


def test_eliminate_without_c_instances():
    D = derive(km("d"))
    assert a_star(D) == (TRUTH, [])
    out = eliminate_tilde_tau(D)
    assert out.conclusion is imp(TAU, TRUTH)
    assert check_derivation(out, Calculus.INT_TAU).valid


def test_eliminate_preconditions():
    with pytest.raises(PreconditionViolated):
        eliminate_tilde_tau(derive(and_intro(km("a", P0), km("d"))))
    with pytest.raises(PreconditionViolated):
        eliminate_tilde_tau(derive(refl(P0)))


@pytest.mark.parametrize("entry", CORPUS, ids=[e.name for e in CORPUS])
def test_corpus_purifies(entry):
    D = entry.derivation
    assert check_derivation(D, Calculus.KM_TAU).valid
    out = purify(D)
    assert out.conclusion is entry.goal and out.premise is entry.premise
    assert check_derivation(out, Calculus.INT_TAU, entry.premise).valid
    assert is_pure(out)


@pytest.mark.parametrize("entry", CORPUS, ids=[e.name for e in CORPUS])
def test_trace_ranks_descend(entry):
    stages = purification_trace(entry.derivation)
    assert stages[-1].rank == ROOT and stages[-1].replaced is None
    for prev, nxt in zip(stages, stages[1:]):
        assert nxt.rank.precedes(prev.rank)
        if prev.replaced is not NOT_TAU and prev.rank.m > 1:
            assert nxt.rank != prev.rank


def test_purify_rejects_tilde_premise():
    alpha = imp(tilde(P0), P1)
    D = derive(premise_instance(alpha), premise=alpha)
    with pytest.raises(PreconditionViolated):
        purify(D)


def test_purify_rejects_tilde_goal():
    with pytest.raises(PreconditionViolated):
        purify(derive(km("a", P0)))


def test_validate_semantics_chain3():
    A = chain(3)
    E = TauExpansion(A, 1, tilde_from_pair(EPair(A, 1, 2)))
    assert validate_semantics(imp(TAU, tilde(TAU)), E)
    assert validate_semantics(em_tau(P0), E)
    assert not validate_semantics(disj(P0, neg(P0)), E)
    with pytest.raises(MissingInterpretation):
        validate_semantics(tilde(P0), TauExpansion(A, 1))


def test_corpus_sound_in_small_expansions():
    for name, A in systematic.fixtures():
        if A.n > 6:
            continue
        for p in e_pairs(A):
            E = TauExpansion(A, p.a, tilde_from_pair(p))
            for entry in CORPUS:
                assert sound_in(entry.derivation, E), (name, entry.name)


def test_unsound_outside_proper_axioms():
    # with a table that is not a ~-negation, axiom (d) can fail
    A = chain(3)
    E = TauExpansion(A, 2, TildeTable(A, (0, 0, 0)))
    assert validate_derivation(derive(km("d")), E) == [0]


def test_proper_identities_hold_for_every_tilde():
    for name, A in systematic.fixtures():
        if A.n > 8:
            continue
        for p in e_pairs(A):
            assert all(proper_identities(A, p.a, tilde_from_pair(p)).values()), name


def test_proper_identities_reject_bad_table():
    A = chain(3)
    assert proper_identities(A, 1, (0, 0, 0)) == {"a'": True, "b'": False, "c'": True, "d'": False}


@pytest.mark.parametrize("name,A", [(n, A) for n, A in systematic.fixtures() if A.n <= 4])
def test_completeness_exhaustive(name, A):
    cases = completeness_spot_check(A, exhaustive=True)
    assert cases and all(c.ok for c in cases)
    assert cases == completeness_spot_check(A)
    assert len(cases) == len(e_pairs(A))


def test_completeness_spot_check_larger():
    for name, A in systematic.fixtures():
        if A.n <= 16:
            assert all(c.ok for c in completeness_spot_check(A)), name


def test_tables_chain3_tau_a():
    A = chain(3)
    assert tables_satisfying_proper_identities(A, 1) == [(2, 2, 1)]
    assert tables_satisfying_proper_identities(boolean(2), 0) == [tuple(int(v) for v in boolean(2).neg)]
