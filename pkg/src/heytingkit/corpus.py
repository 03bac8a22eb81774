"""Hand-built KM_τ derivations whose premise and conclusion are free of ~.

Each entry takes a detour through the proper axioms, so purifying it has
real work to do.
"""
from __future__ import annotations

from dataclasses import dataclass

from .formula import P0, P1, TAU, Formula, conj, disj, imp, neg, tilde
from .hilbert import (
    Derivation, and_intro, and_left, and_right, assume, ax, compose, derive, ex_falso, km, lam, mp, or_elim,
    premise_instance,
)

NOT_TAU = tilde(TAU)


def em_tau(p: Formula) -> Formula:
    """p ∨ (p → τ)."""
    return disj(p, imp(p, TAU))


def _a_left(lam_: Formula):
    """~λ → (λ → τ) ∧ ~τ."""
    return and_left(km("a", lam_))


def _a_right(lam_: Formula):
    """(λ → τ) ∧ ~τ → ~λ."""
    return and_right(km("a", lam_))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    description: str
    derivation: Derivation

    @property
    def premise(self) -> Formula | None:
        return self.derivation.premise

    @property
    def goal(self) -> Formula:
        return self.derivation.conclusion


def _tau_gives_em():
    return derive(compose(km("d"), km("c", P0)))


def _double_negation_of_em():
    h = imp(em_tau(P0), TAU)
    return derive(lam(h, mp(compose(km("c", P0), assume(h)), km("b"))))


def _through_tilde_p():
    # (p0 → τ) → τ → p1 ∨ (p1 → τ), passing through ~p0
    p0t = imp(P0, TAU)
    not_tau = mp(assume(TAU), km("d"))
    tilde_p = mp(and_intro(assume(p0t), not_tau), _a_right(P0))
    back = mp(tilde_p, _a_left(P0))
    return derive(lam(p0t, lam(TAU, mp(and_right(back), km("c", P1)))))


def _through_double_tilde():
    # τ → p1 ∨ (p1 → τ), passing through ~~p0
    tp = tilde(P0)
    not_tau = mp(assume(TAU), km("d"))
    inner = lam(tp, assume(TAU))  # ~p0 → τ under τ
    ttp = mp(and_intro(inner, not_tau), _a_right(tp))
    again = and_right(mp(ttp, _a_left(tp)))
    return derive(lam(TAU, mp(again, km("c", P1))))


def _a_at_tau():
    # τ → (τ → τ) ∧ (p0 ∨ (p0 → τ)), using (a) with p := τ
    not_tau = mp(assume(TAU), km("d"))
    both = mp(not_tau, _a_left(TAU))
    return derive(lam(TAU, and_intro(and_left(both), mp(and_right(both), km("c", P0)))))


def _c_at_tilde_tau():
    # τ → p1 ∨ (p1 → τ), via the instance of (c) at ~τ
    not_tau = mp(assume(TAU), km("d"))
    split = mp(not_tau, km("c", NOT_TAU))
    goal = em_tau(P1)
    left = lam(NOT_TAU, mp(assume(NOT_TAU), km("c", P1)))
    via_b = imp(NOT_TAU, TAU)
    right = lam(via_b, mp(mp(mp(assume(via_b), km("b")), km("d")), km("c", P1)))
    assert left.conclusion.args[1] is goal
    return derive(lam(TAU, or_elim(split, left, right)))


def _premise_gives_tau():
    alpha = imp(em_tau(P0), TAU)
    return derive(mp(compose(km("c", P0), premise_instance(alpha)), km("b")), premise=alpha)


def _premise_instance_with_tilde():
    # premise p0 → p1 at p0 := ~τ, p1 := τ gives ~τ → τ, then (b)
    alpha = imp(P0, P1)
    step = premise_instance(alpha, {0: NOT_TAU, 1: TAU})
    return derive(mp(step, km("b")), premise=alpha)


def _excluded_middle_premise():
    # premise p0 ∨ ¬p0 at p0 := ~τ, then split
    alpha = disj(P0, neg(P0))
    split = premise_instance(alpha, {0: NOT_TAU})
    goal = imp(TAU, em_tau(P1))
    left = lam(NOT_TAU, lam(TAU, mp(assume(NOT_TAU), km("c", P1))))
    n = neg(NOT_TAU)
    right = lam(n, lam(TAU, ex_falso(assume(n), mp(assume(TAU), km("d")), em_tau(P1))))
    assert right.conclusion.args[1] is goal
    return derive(or_elim(split, left, right), premise=alpha)


def _identity_through_tilde():
    # p0 → p0 with a ~p0 substituted into a1/a2 and no proper axiom
    q = tilde(P0)
    qp = imp(q, P0)
    return derive(mp(ax("a1", P0, qp), mp(ax("a1", P0, q), ax("a2", P0, qp, P0))))


def _two_c_instances():
    # τ → (p0 ∨ (p0 → τ)) ∧ (p1 ∨ (p1 → τ))
    not_tau = mp(assume(TAU), km("d"))
    return derive(lam(TAU, and_intro(mp(not_tau, km("c", P0)), mp(not_tau, km("c", P1)))))


def _b_with_two_c_instances():
    # ((p0 ∨ (p0 → τ)) ∧ (p1 ∨ (p1 → τ)) → τ) → τ
    both = conj(em_tau(P0), em_tau(P1))
    h = imp(both, TAU)
    to_both = lam(NOT_TAU, and_intro(mp(assume(NOT_TAU), km("c", P0)), mp(assume(NOT_TAU), km("c", P1))))
    return derive(lam(h, mp(compose(to_both, assume(h)), km("b"))))


def _c_nested_in_context():
    # τ → p1 ∨ (p1 → τ), with a side use of (c) at p0 → ~τ
    lam_ = imp(P0, NOT_TAU)
    not_tau = mp(assume(TAU), km("d"))
    side = mp(not_tau, km("c", lam_))
    return derive(lam(TAU, and_left(and_intro(mp(not_tau, km("c", P1)), side))))


def _pure_int():
    # already pure: p0 ∧ p1 → p1 ∧ p0
    pq = conj(P0, P1)
    h = assume(pq)
    return derive(lam(pq, and_intro(and_right(h), and_left(h))))


def corpus() -> list[CorpusEntry]:
    entries = [
        ("tau-gives-em", "(d) then (c): tau -> p0 | (p0 -> tau)", _tau_gives_em),
        ("double-negation-of-em", "(b) after (c)", _double_negation_of_em),
        ("through-tilde-p", "both directions of (a) at p0", _through_tilde_p),
        ("through-double-tilde", "(a) at ~p0, a degree-2 detour", _through_double_tilde),
        ("a-at-tau", "(a) with p := tau", _a_at_tau),
        ("c-at-tilde-tau", "(c) with p := ~tau, then (b)", _c_at_tilde_tau),
        ("premise-gives-tau", "premise (p0 | (p0 -> tau)) -> tau proves tau", _premise_gives_tau),
        ("premise-instance-with-tilde", "premise p0 -> p1 at ~tau, tau", _premise_instance_with_tilde),
        ("excluded-middle-premise", "premise p0 | -p0 at ~tau", _excluded_middle_premise),
        ("identity-through-tilde", "~p0 only inside Int axioms", _identity_through_tilde),
        ("two-c-instances", "two (c) instances joined", _two_c_instances),
        ("b-with-two-c-instances", "(b) against a conjunction of two (c) instances", _b_with_two_c_instances),
        ("c-nested-in-context", "(c) at p0 -> ~tau", _c_nested_in_context),
        ("pure-int", "no ~ at all", _pure_int),
    ]
    return [CorpusEntry(name, text, build()) for name, text, build in entries]


def corpus_entry(name: str) -> CorpusEntry:
    for e in corpus():
        if e.name == name:
            return e
    raise KeyError(name)
