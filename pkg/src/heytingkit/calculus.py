"""Maximal ~-formulas, ranks, and the purification of KM_τ derivations into
Int_τ derivations.

A purification step replaces a maximal ~γ (γ ≠ τ) of highest degree by
δ = (γ → τ) ∧ ~τ throughout a derivation.  Once only ~τ is left, it is
replaced by a ~-free A* built from the instances of axiom (c).  Steps that
stop being axiom instances after a replacement are re-proved by bridges
compiled from proof terms.
"""
from __future__ import annotations

import dataclasses
import itertools
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .core import HeytingAlgebra
from .enrichment import TauExpansion, check_tilde
from .errors import DerivationError, MissingInterpretation, NoEligibleGamma, PreconditionViolated
from .formula import (
    AND, IMP, NOT, OR, TAU, TILDE, TRUTH, Formula, big_conj, conj, contains, disj, imp, maximal_tilde, neg,
    replace, tilde, to_text,
)
from .hilbert import (
    Calculus, Derivation, DerivationBuilder, ModusPonens, Premise, Proof, ProperAxiom, and_intro,
    and_left, and_right, assume, check_derivation, compose, iff_intro, iff_refl, instance, lam, mp, neg_intro,
    or_elim, or_left, or_right, refl,
)
from .variety import holds_in_expansion

TILDE_TAU = tilde(TAU)


class Rank(NamedTuple):
    m: int
    n: int

    def precedes(self, other: "Rank") -> bool:
        """self ≪ other."""
        return self.m < other.m or (self.m == other.m and self.n <= other.n)

    def __str__(self) -> str:
        return f"({self.m},{self.n})"


ROOT = Rank(0, 0)


def maximal_set(formulas) -> list[Formula]:
    """M(S) in order of first occurrence."""
    if isinstance(formulas, Derivation):
        formulas = formulas.formulas
    return maximal_tilde(formulas)


def rank(D: Derivation) -> Rank:
    M = maximal_set(D)
    if not M:
        return ROOT
    m = max(f.degree for f in M)
    return Rank(m, sum(1 for f in M if f.degree == m))


def is_pure(D: Derivation, premise: Formula | None = None, goal: Formula | None = None) -> bool:
    """M(D) ⊆ M(premise, goal)."""
    premise = D.premise if premise is None else premise
    goal = D.conclusion if goal is None else goal
    ends = set(maximal_set([f for f in (premise, goal) if f is not None]))
    return set(maximal_set(D)) <= ends


# ------------------------------------------------------------- rewriting


Bridge = Callable[[int, Formula], Proof]


def _rewrite(D: Derivation, premise: Formula | None, target: Formula, value: Formula, bridge: Bridge) -> Derivation:
    """Replace ``target`` by ``value`` in every step.

    Axiom and premise steps keep their justification with the substitution
    rewritten the same way; when that no longer reproduces the rewritten
    formula, ``bridge`` supplies a proof of it.
    """
    out = DerivationBuilder(premise)
    where: list[int] = []
    for i, step in enumerate(D.steps):
        f = replace(step.formula, target, value)
        just = step.justification
        if isinstance(just, ModusPonens):
            where.append(out.add(f, ModusPonens(where[just.minor], where[just.major])))
            continue
        subst = tuple((k, replace(v, target, value)) for k, v in just.subst)
        moved = dataclasses.replace(just, subst=subst)
        if instance(moved, premise) is f:
            where.append(out.add(f, moved))
        elif isinstance(just, Premise):
            raise PreconditionViolated(
                f"step {i + 1}: the premise instance does not survive replacing {to_text(target)}"
            )
        else:
            where.append(out.emit(bridge(i, f)))
    # the conclusion may have been reached early through a bridge
    end = where[-1]
    return Derivation(out.steps[: end + 1], premise)


def _verify(D: Derivation, premise: Formula | None, what: str) -> None:
    verdict = check_derivation(D, Calculus.KM_TAU, premise)
    if not verdict.valid:
        raise DerivationError(f"{what} produced an invalid derivation", verdict.diagnostics)


# --------------------------------------------------------- purification step


def choose_gamma(D: Derivation, premise: Formula | None = None) -> Formula:
    """The maximal ~γ of highest degree, γ ≠ τ, absent from the premise,
    leftmost in the earliest step."""
    premise = D.premise if premise is None else premise
    M = maximal_set(D)
    if not M:
        raise NoEligibleGamma("the derivation has no maximal ~-formulas")
    top = max(f.degree for f in M)
    for f in M:
        if f.degree == top and f is not TILDE_TAU and not (premise is not None and contains(premise, f)):
            return f
    raise NoEligibleGamma("no maximal ~-formula of highest degree is eligible")


def purify_step(D: Derivation, premise: Formula | None = None, goal: Formula | None = None,
                gamma: Formula | None = None) -> Derivation:
    """Replace one maximal ~γ by δ = (γ → τ) ∧ ~τ."""
    premise = D.premise if premise is None else premise
    _check_goal(D, goal)
    before = rank(D)
    if before == ROOT:
        raise PreconditionViolated("the derivation is already free of ~")
    target = choose_gamma(D, premise) if gamma is None else gamma
    g = target.args[0]
    delta = conj(imp(g, TAU), TILDE_TAU)

    def bridge(i: int, f: Formula) -> Proof:
        just = D.steps[i].justification
        if isinstance(just, ProperAxiom) and just.letter == "a" and dict(just.subst).get(0) is g:
            return iff_refl(delta)
        raise DerivationError(f"step {i + 1}: no bridge for {to_text(f)}")

    out = _rewrite(D, premise, target, delta, bridge)
    _verify(out, premise, "purify_step")
    after = rank(out)
    if not (after.precedes(before) and (after != before or before.m == 1)):
        raise DerivationError(f"rank went from {before} to {after}")
    return out


def _check_goal(D: Derivation, goal: Formula | None) -> None:
    if goal is not None and D.conclusion is not goal:
        raise PreconditionViolated(f"the derivation ends in {to_text(D.conclusion)}, not {to_text(goal)}")


# ------------------------------------------------------ eliminating ~τ


def c_instances(D: Derivation) -> list[Formula]:
    """The λ of every axiom (c) step, without repeats, in order."""
    seen: dict[Formula, None] = {}
    for step in D.steps:
        j = step.justification
        if isinstance(j, ProperAxiom) and j.letter == "c":
            seen.setdefault(dict(j.subst).get(0, instance(j).args[1].args[0]), None)
    return list(seen)


def _excluded_middle_tau(b: Formula) -> Formula:
    return disj(b, imp(b, TAU))


def a_star(D: Derivation) -> tuple[Formula, list[Formula]]:
    """(A*, [B_1, ..., B_k]) with B_j = λ_j[~τ:⊤] and A* = ⋀ (B_j ∨ (B_j → τ))."""
    bs: dict[Formula, None] = {}
    for lam_j in c_instances(D):
        bs.setdefault(replace(lam_j, TILDE_TAU, TRUTH), None)
    bs_list = list(bs)
    return big_conj(_excluded_middle_tau(b) for b in bs_list), bs_list


def _tau_from(c_to_tau: Proof, b: Formula) -> Proof:
    """From (B ∨ (B → τ)) → τ, derive τ."""
    to_tau = lam(b, mp(or_left(assume(b), imp(b, TAU)), c_to_tau))
    return mp(or_right(b, to_tau), c_to_tau)


def _double_tau(A: Formula, bs: list[Formula]) -> Proof:
    """(A → τ) → τ for A = ⋀ (B_j ∨ (B_j → τ)) or A = ⊤."""
    h = imp(A, TAU)
    if not bs:
        return lam(h, mp(refl(TRUTH.args[0]), assume(h)))
    if len(bs) == 1:
        return lam(h, _tau_from(assume(h), bs[0]))
    rest, last = A.args
    # from h: R ∧ c → τ and R, get c → τ, hence τ; so R → τ
    c = last
    r_to_tau = lam(rest, _tau_from(lam(c, mp(and_intro(assume(rest), assume(c)), assume(h))), bs[-1]))
    return lam(h, mp(r_to_tau, _double_tau(rest, bs[:-1])))


def _project(A: Formula, p: Proof, k: int, j: int) -> Proof:
    """From a proof of the left-nested conjunction A of k parts, part j."""
    while k > 1:
        if j == k - 1:
            return and_right(p)
        p = and_left(p)
        k -= 1
    return p


def _congruence(f: Formula, hole: Formula, x: Formula, y: Formula, xy: Proof, yx: Proof) -> tuple[Proof, Proof]:
    """Proofs of f[hole:x] → f[hole:y] and back, given x → y and y → x."""
    fx, fy = replace(f, hole, x), replace(f, hole, y)
    if f is hole:
        return xy, yx
    if not contains(f, hole):
        return refl(fx), refl(fy)
    if f.op == TILDE:
        raise DerivationError(f"{to_text(f)} nests the replaced formula under ~")
    if f.op == NOT:
        (a,) = f.args
        a_xy, a_yx = _congruence(a, hole, x, y, xy, yx)
        ax_, ay = a_xy.conclusion.args[0], a_xy.conclusion.args[1]

        def flip(to_other: Proof, src: Formula, dst: Formula) -> Proof:
            # ¬src ⊢ ¬dst using dst → src
            n = neg(src)
            return lam(n, neg_intro(to_other, lam(dst, assume(n))))
        return flip(a_yx, ax_, ay), flip(a_xy, ay, ax_)
    a, b = f.args
    a_xy, a_yx = _congruence(a, hole, x, y, xy, yx)
    b_xy, b_yx = _congruence(b, hole, x, y, xy, yx)
    ax_, ay = replace(a, hole, x), replace(a, hole, y)
    bx, by = replace(b, hole, x), replace(b, hole, y)

    def direction(src_a, src_b, dst_a, dst_b, fa, fb, back_a):
        src = Formula(f.op, (src_a, src_b))
        h = assume(src)
        if f.op == AND:
            return lam(src, and_intro(mp(and_left(h), fa), mp(and_right(h), fb)))
        if f.op == OR:
            left = lam(src_a, or_left(mp(assume(src_a), fa), dst_b))
            right = lam(src_b, or_right(dst_a, mp(assume(src_b), fb)))
            return lam(src, or_elim(h, left, right))
        assert f.op == IMP
        return lam(src, lam(dst_a, mp(mp(mp(assume(dst_a), back_a), h), fb)))

    forward = direction(ax_, bx, ay, by, a_xy, b_xy, a_yx)
    backward = direction(ay, by, ax_, bx, a_yx, b_yx, a_xy)
    assert forward.conclusion is imp(fx, fy) and backward.conclusion is imp(fy, fx)
    return forward, backward


def eliminate_tilde_tau(D: Derivation, premise: Formula | None = None, goal: Formula | None = None) -> Derivation:
    """Replace ~τ by the ~-free A*; the result mentions no ~ at all."""
    premise = D.premise if premise is None else premise
    _check_goal(D, goal)
    M = maximal_set(D)
    if M != [TILDE_TAU]:
        shown = ", ".join(to_text(f) for f in M) or "nothing"
        raise PreconditionViolated(f"M(D) must be exactly {{~tau}}, found {shown}")
    if premise is not None and contains(premise, TILDE_TAU):
        raise PreconditionViolated("~tau occurs in the premise")
    A, bs = a_star(D)
    k = len(bs)
    hyp_a = assume(A)
    # under the assumption A*: ⊤ → A* and A* → ⊤
    top_to_a = lam(TRUTH, hyp_a)
    a_to_top = lam(A, refl(TRUTH.args[0]))

    def d4(lam_j: Formula) -> Proof:
        b = replace(lam_j, TILDE_TAU, TRUTH)
        lam_star = replace(lam_j, TILDE_TAU, A)
        b_to_l, l_to_b = _congruence(lam_j, TILDE_TAU, TRUTH, A, top_to_a, a_to_top)
        part = _project(A, hyp_a, k, bs.index(b))
        left = lam(b, or_left(mp(assume(b), b_to_l), imp(lam_star, TAU)))
        right = lam(imp(b, TAU), or_right(lam_star, compose(l_to_b, assume(imp(b, TAU)))))
        return lam(A, or_elim(part, left, right))

    def d5() -> Proof:
        if not bs:
            return lam(TAU, refl(TRUTH.args[0]))
        parts = [or_right(b, lam(b, assume(TAU))) for b in bs]
        whole = parts[0]
        for p in parts[1:]:
            whole = and_intro(whole, p)
        return lam(TAU, whole)

    def bridge(i: int, f: Formula) -> Proof:
        just = D.steps[i].justification
        if isinstance(just, ProperAxiom):
            if just.letter == "a":
                # A* ↔ (τ → τ) ∧ A*
                tt = imp(TAU, TAU)
                both = conj(tt, A)
                p = iff_intro(lam(A, and_intro(refl(TAU), assume(A))), lam(both, and_right(assume(both))))
            elif just.letter == "b":
                p = _double_tau(A, bs)
            elif just.letter == "c":
                p = d4(dict(just.subst).get(0, instance(just).args[1].args[0]))
            else:
                p = d5()
            if p.conclusion is not f:
                raise DerivationError(f"step {i + 1}: bridge proves {to_text(p.conclusion)}, not {to_text(f)}")
            return p
        raise DerivationError(f"step {i + 1}: no bridge for {to_text(f)}")

    out = _rewrite(D, premise, TILDE_TAU, A, bridge)
    _verify(out, premise, "eliminate_tilde_tau")
    if maximal_set(out):
        raise DerivationError("~ survived the elimination of ~tau")
    return out


# ---------------------------------------------------------------- purify


@dataclass(frozen=True)
class PurifyStage:
    rank: Rank
    replaced: Formula | None  # the ~γ or ~τ removed to reach the next stage
    derivation: Derivation


def purification_trace(D: Derivation, premise: Formula | None = None, goal: Formula | None = None) -> list[PurifyStage]:
    """Every intermediate derivation of :func:`purify`, with its rank."""
    premise = D.premise if premise is None else premise
    _check_goal(D, goal)
    goal = D.conclusion
    if premise is not None and premise.degree:
        raise PreconditionViolated("the premise must be ~-free")
    if goal.degree:
        raise PreconditionViolated("the goal must be ~-free")
    verdict = check_derivation(D, Calculus.KM_TAU, premise)
    if not verdict.valid:
        raise DerivationError("not a valid KM_tau derivation", verdict.diagnostics)
    stages = []
    current = D
    while True:
        r = rank(current)
        M = maximal_set(current)
        if not M:
            stages.append(PurifyStage(r, None, current))
            return stages
        if M == [TILDE_TAU]:
            stages.append(PurifyStage(r, TILDE_TAU, current))
            current = eliminate_tilde_tau(current, premise)
            continue
        gamma = choose_gamma(current, premise)
        stages.append(PurifyStage(r, gamma, current))
        nxt = purify_step(current, premise, gamma=gamma)
        if len(stages) > 10_000:
            raise DerivationError("purification does not terminate")
        current = nxt


def purify(D: Derivation, premise: Formula | None = None, goal: Formula | None = None) -> Derivation:
    """An Int_τ derivation of the same ~-free goal from the same premise."""
    out = purification_trace(D, premise, goal)[-1].derivation
    if out.conclusion is not D.conclusion:
        raise DerivationError("purification changed the conclusion")
    verdict = check_derivation(out, Calculus.INT_TAU, out.premise)
    if not verdict.valid:
        raise DerivationError("purified derivation is not an Int_tau derivation", verdict.diagnostics)
    return out


# ---------------------------------------------------------------- semantics


def validate_semantics(phi: Formula, E: TauExpansion) -> bool:
    """Does ``phi`` evaluate to 1 everywhere in the τ~-expansion E?"""
    if E.tilde is None and phi.degree:
        raise MissingInterpretation("the expansion interprets no ~")
    return holds_in_expansion(E, phi)


def validate_derivation(D: Derivation, E: TauExpansion) -> list[int]:
    """Steps of D not valid in E (0-based); the premise is not assumed."""
    return [i for i, step in enumerate(D.steps) if not validate_semantics(step.formula, E)]


def sound_in(D: Derivation, E: TauExpansion) -> bool:
    """Every step holds in E, or E does not validate the premise."""
    if D.premise is not None and not validate_semantics(D.premise, E):
        return True
    return not validate_derivation(D, E)


# ------------------------------------------------- proper axioms as identities


def proper_identities(A: HeytingAlgebra, tau: int, table) -> dict[str, bool]:
    """(a′) ~x = (x→τ) ∧ ~τ, (b′) ~τ→τ ≤ τ, (c′) ~τ ≤ x ∨ (x→τ), (d′) τ ≤ ~τ."""
    t = np.asarray(getattr(table, "t", table), dtype=np.int64)
    xs = np.arange(A.n)
    c = t[tau]
    return {
        "a'": bool((t == A.meet[A.imp[xs, tau], c]).all()),
        "b'": bool(A.leq[A.imp[c, tau], tau]),
        "c'": bool(A.leq[c, A.join[xs, A.imp[xs, tau]]].all()),
        "d'": bool(A.leq[tau, c]),
    }


def tables_satisfying_proper_identities(A: HeytingAlgebra, tau: int, *, exhaustive: bool = False) -> list[tuple]:
    """Unary tables on A validating (a′)–(d′) with the given τ.

    (a′) fixes the whole table once ~τ is chosen, so trying every value of
    ~τ finds them all; ``exhaustive`` instead scans all |A|^|A| tables.
    """
    if exhaustive:
        candidates = itertools.product(range(A.n), repeat=A.n)
    else:
        xs = np.arange(A.n)
        candidates = (tuple(int(v) for v in A.meet[A.imp[xs, tau], c]) for c in range(A.n))
    return sorted({t for t in candidates if all(proper_identities(A, tau, t).values())})


@dataclass(frozen=True)
class CompletenessCase:
    tau: int
    table: tuple
    is_tilde: bool
    tilde_at_top_is_tau: bool

    @property
    def ok(self) -> bool:
        return self.is_tilde and self.tilde_at_top_is_tau


def completeness_spot_check(A: HeytingAlgebra, *, exhaustive: bool = False) -> list[CompletenessCase]:
    """For each τ and each table validating (a′)–(d′): is it a ~-negation with ~1 = τ?"""
    out = []
    for tau in range(A.n):
        for t in tables_satisfying_proper_identities(A, tau, exhaustive=exhaustive):
            out.append(CompletenessCase(tau, t, check_tilde(A, t).is_tilde, t[A.top] == tau))
    return out
