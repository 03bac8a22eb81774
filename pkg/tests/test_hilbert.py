import pytest

from heytingkit.errors import DerivationError, FormatError
from heytingkit.formula import P0, P1, TAU, conj, disj, imp, neg, parse_formula, tilde
from heytingkit.hilbert import (
    INT_AXIOMS, Calculus, Derivation, IntAxiom, ModusPonens, Premise, ProperAxiom, Step, and_intro, and_left,
    and_right, assume, check_derivation, compose, derive, ex_falso, format_derivation, iff_refl, km, lam,
    make_subst, neg_intro, or_elim, or_left, or_right, parse_derivation, premise_instance, refl,
)

NOT_TAU = tilde(TAU)


def test_proper_axiom_a_at_tau():
    f = parse_formula("(~tau -> (tau -> tau) & ~tau) & ((tau -> tau) & ~tau -> ~tau)")
    D = Derivation([Step(f, ProperAxiom("a", make_subst({0: TAU})))])
    assert check_derivation(D, Calculus.KM_TAU).valid


def test_d_then_c_chain():
    D = derive(compose(km("d"), km("c", P0)))
    assert check_derivation(D, "kmtau").valid
    assert D.conclusion is imp(TAU, disj(P0, imp(P0, TAU)))


def test_bad_mp_cites_later_step():
    D = Derivation([
        Step(INT_AXIOMS["a1"], IntAxiom("a1")),
        Step(imp(P1, P0), ModusPonens(0, 2)),
        Step(P0, IntAxiom("a1")),
    ])
    verdict = check_derivation(D)
    kinds = {(d.step, d.kind) for d in verdict.diagnostics}
    assert (1, "BadMP") in kinds and (2, "BadAxiomInstance") in kinds
    assert str(verdict.diagnostics[0]).startswith("step 2: BadMP")


def test_bad_mp_wrong_major():
    D = Derivation([
        Step(P0, Premise()),
        Step(imp(P0, P0), Premise()),
        Step(P1, ModusPonens(0, 1)),
    ], premise=P0)
    verdict = check_derivation(D)
    assert [d.kind for d in verdict.diagnostics] == ["BadPremise", "BadMP"]


def test_premise_without_premise():
    D = Derivation([Step(P0, Premise())])
    assert check_derivation(D).diagnostics[0].kind == "BadPremise"


def test_calculus_languages():
    D = derive(compose(km("d"), km("c", P0)))
    assert not check_derivation(D, Calculus.INT_TAU).valid
    assert not check_derivation(D, Calculus.INT_TAU_TILDE).valid
    pure = derive(refl(P0))
    for c in Calculus:
        assert check_derivation(pure, c).valid
    tilde_only = derive(refl(tilde(P0)))
    assert check_derivation(tilde_only, Calculus.INT_TAU_TILDE).valid
    kinds = {d.kind for d in check_derivation(tilde_only, Calculus.INT_TAU).diagnostics}
    assert kinds == {"IllegalSubstitutionLanguage"}


def test_calculus_parse():
    assert Calculus.parse("KM_tau") is Calculus.KM_TAU
    assert Calculus.parse("int-tau~") is Calculus.INT_TAU_TILDE
    with pytest.raises(ValueError):
        Calculus.parse("s4")


@pytest.mark.parametrize("proof", [
    lambda: lam(P0, and_intro(assume(P0), assume(P0))),
    lambda: lam(conj(P0, P1), and_intro(and_right(assume(conj(P0, P1))), and_left(assume(conj(P0, P1))))),
    lambda: lam(disj(P0, P1), or_elim(assume(disj(P0, P1)), lam(P0, or_right(P1, assume(P0))),
                                      lam(P1, or_left(assume(P1), P0)))),
    lambda: lam(P0, lam(neg(P0), ex_falso(assume(neg(P0)), assume(P0), P1))),
    lambda: lam(imp(P0, P1), lam(imp(P0, neg(P1)), neg_intro(assume(imp(P0, P1)), assume(imp(P0, neg(P1)))))),
    lambda: iff_refl(imp(P0, TAU)),
], ids=["and", "and-swap", "or-swap", "ex-falso", "neg-intro", "iff-refl"])
def test_derived_rules_compile_to_valid_int(proof):
    D = derive(proof())
    assert check_derivation(D, Calculus.INT_TAU).valid


def test_open_hypothesis_rejected():
    with pytest.raises(DerivationError):
        derive(assume(P0))


def test_premise_instance():
    alpha = imp(P0, P1)
    D = derive(premise_instance(alpha, {0: P1, 1: P0}), premise=alpha)
    assert D.conclusion is imp(P1, P0)
    assert check_derivation(D).valid
    assert not check_derivation(D, premise=imp(P1, P1)).valid


def test_format_parse_round_trip():
    from heytingkit.corpus import corpus

    for entry in corpus():
        D = entry.derivation
        back = parse_derivation(format_derivation(D))
        assert back.steps == D.steps and back.premise is D.premise


def test_parse_folds_premises():
    text = "premise: p0\npremise: p1\n1. p0 & p1 ; premise\n"
    D = parse_derivation(text)
    assert D.premise is conj(P0, P1)
    assert check_derivation(D).valid


def test_parse_comments():
    D = parse_derivation("# identity\n1. tau -> ~tau ; km d  # axiom d\n")
    assert D.conclusion is imp(TAU, NOT_TAU)


@pytest.mark.parametrize("text,line", [
    ("1. p0 ; ax a1\n3. p0 ; ax a1\n", 2),
    ("1. p0 -> ; ax a1\n", 1),
    ("1. p0 ax a1\n", 1),
    ("x. p0 ; ax a1\n", 1),
    ("1. p0 ; mp 1\n", 1),
    ("1. p0 ; frobnicate\n", 1),
    ("1. p0 ; ax a1 [p0 = p1]\n", 1),
    ("\n1. p0 ; ax\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(FormatError) as err:
        parse_derivation(text)
    assert err.value.line == line
