"""Hilbert-style derivations: axiom schemas, steps with recorded
substitutions, the checker, and a small proof-term language that compiles
natural-deduction style arguments into Hilbert lines.

Intuitionistic base (Kleene's ten axioms, variables p0 p1 p2 for p q r):

    a1  p -> (q -> p)
    a2  (p -> q) -> ((p -> (q -> r)) -> (p -> r))
    a3  p -> (q -> p & q)
    a4  p & q -> p
    a5  p & q -> q
    a6  p -> p | q
    a7  q -> p | q
    a8  (p -> r) -> ((q -> r) -> (p | q -> r))
    a9  (p -> q) -> ((p -> -q) -> -p)
    a10 -p -> (p -> q)

Proper axioms of KM_τ:

    a   ~p <-> (p -> tau) & ~tau
    b   (~tau -> tau) -> tau
    c   ~tau -> p | (p -> tau)
    d   tau -> ~tau
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import DerivationError, FormatError, FormulaSyntaxError
from .formula import (
    IMP, P0, P1, P2, TAU, Formula, conj, disj, iff, imp, neg, parse_formula, substitute, tilde, to_text,
)

INT_AXIOMS: dict[str, Formula] = {
    "a1": imp(P0, imp(P1, P0)),
    "a2": imp(imp(P0, P1), imp(imp(P0, imp(P1, P2)), imp(P0, P2))),
    "a3": imp(P0, imp(P1, conj(P0, P1))),
    "a4": imp(conj(P0, P1), P0),
    "a5": imp(conj(P0, P1), P1),
    "a6": imp(P0, disj(P0, P1)),
    "a7": imp(P1, disj(P0, P1)),
    "a8": imp(imp(P0, P2), imp(imp(P1, P2), imp(disj(P0, P1), P2))),
    "a9": imp(imp(P0, P1), imp(imp(P0, neg(P1)), neg(P0))),
    "a10": imp(neg(P0), imp(P0, P1)),
}

PROPER_AXIOMS: dict[str, Formula] = {
    "a": iff(tilde(P0), conj(imp(P0, TAU), tilde(TAU))),
    "b": imp(imp(tilde(TAU), TAU), TAU),
    "c": imp(tilde(TAU), disj(P0, imp(P0, TAU))),
    "d": imp(TAU, tilde(TAU)),
}


class Calculus(enum.Enum):
    INT_TAU = "inttau"
    INT_TAU_TILDE = "inttautilde"
    KM_TAU = "kmtau"

    @classmethod
    def parse(cls, name: "str | Calculus") -> "Calculus":
        if isinstance(name, Calculus):
            return name
        key = name.lower().replace("_", "").replace("-", "").replace("~", "tilde")
        for c in cls:
            if c.value == key:
                return c
        raise ValueError(f"unknown calculus {name!r}")


Substitution = tuple  # sorted ((variable index, formula), ...)


def make_subst(mapping: Mapping[int, Formula] | Iterable | None = None) -> Substitution:
    if mapping is None:
        return ()
    items = mapping.items() if isinstance(mapping, Mapping) else mapping
    return tuple(sorted((int(k), v) for k, v in items))


@dataclass(frozen=True)
class IntAxiom:
    id: str
    subst: Substitution = ()


@dataclass(frozen=True)
class ProperAxiom:
    letter: str
    subst: Substitution = ()


@dataclass(frozen=True)
class Premise:
    subst: Substitution = ()


@dataclass(frozen=True)
class ModusPonens:
    minor: int  # index of A
    major: int  # index of A -> B


Justification = IntAxiom | ProperAxiom | Premise | ModusPonens


@dataclass(frozen=True)
class Step:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Derivation:
    steps: tuple
    premise: Formula | None = None

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    def __getitem__(self, i: int) -> Step:
        return self.steps[i]

    @property
    def formulas(self) -> list[Formula]:
        return [s.formula for s in self.steps]

    @property
    def conclusion(self) -> Formula:
        if not self.steps:
            raise DerivationError("empty derivation")
        return self.steps[-1].formula


def instance(just: Justification, premise: Formula | None = None) -> Formula | None:
    """The formula an axiom or premise justification stands for."""
    if isinstance(just, IntAxiom):
        schema = INT_AXIOMS.get(just.id)
    elif isinstance(just, ProperAxiom):
        schema = PROPER_AXIOMS.get(just.letter)
    elif isinstance(just, Premise):
        schema = premise
    else:
        return None
    if schema is None:
        return None
    return substitute(schema, dict(just.subst))


# ------------------------------------------------------------------ checking


@dataclass(frozen=True)
class Diagnostic:
    step: int  # 0-based
    kind: str  # BadAxiomInstance, BadPremise, BadMP, IllegalSubstitutionLanguage
    message: str

    def __str__(self) -> str:
        return f"step {self.step + 1}: {self.kind}: {self.message}"


@dataclass
class Verdict:
    valid: bool
    diagnostics: list = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


def check_derivation(D: Derivation, calculus: "Calculus | str" = Calculus.KM_TAU,
                     premise: Formula | None = None) -> Verdict:
    """Check every step of ``D`` and report all problems found."""
    calculus = Calculus.parse(calculus)
    premise = D.premise if premise is None else premise
    problems: list[Diagnostic] = []
    pure_only = calculus is Calculus.INT_TAU
    if pure_only and premise is not None and premise.degree:
        problems.append(Diagnostic(-1, "IllegalSubstitutionLanguage", "an Int_tau premise must be ~-free"))
    for i, step in enumerate(D.steps):
        f, just = step.formula, step.justification
        if isinstance(just, ModusPonens):
            j, k = just.minor, just.major
            if not (0 <= j < i and 0 <= k < i):
                problems.append(Diagnostic(i, "BadMP", f"cites step {j + 1} or {k + 1}, not both earlier"))
            elif D.steps[k].formula is not imp(D.steps[j].formula, f):
                problems.append(Diagnostic(i, "BadMP", f"step {k + 1} is not step {j + 1} -> this formula"))
        else:
            if isinstance(just, ProperAxiom) and calculus is not Calculus.KM_TAU:
                problems.append(Diagnostic(i, "BadAxiomInstance", f"proper axiom ({just.letter}) is not part of {calculus.value}"))
                continue
            if isinstance(just, Premise) and premise is None:
                problems.append(Diagnostic(i, "BadPremise", "cites a premise but none is given"))
                continue
            if pure_only and any(v.degree for _, v in just.subst):
                problems.append(Diagnostic(i, "IllegalSubstitutionLanguage", "substitutes a formula containing ~"))
            expected = instance(just, premise)
            if expected is None:
                problems.append(Diagnostic(i, "BadAxiomInstance", f"unknown axiom {just!r}"))
            elif expected is not f:
                kind = "BadPremise" if isinstance(just, Premise) else "BadAxiomInstance"
                problems.append(Diagnostic(i, kind, f"instance is {to_text(expected)}"))
        if pure_only and f.degree:
            problems.append(Diagnostic(i, "IllegalSubstitutionLanguage", "formula contains ~"))
    return Verdict(not problems, problems)


# ------------------------------------------------------------ serialization


def _subst_text(subst: Substitution) -> str:
    if not subst:
        return ""
    return " [" + ", ".join(f"p{k} := {to_text(v)}" for k, v in subst) + "]"


def _just_text(just: Justification) -> str:
    if isinstance(just, IntAxiom):
        return f"ax {just.id}" + _subst_text(just.subst)
    if isinstance(just, ProperAxiom):
        return f"km {just.letter}" + _subst_text(just.subst)
    if isinstance(just, Premise):
        return "premise" + _subst_text(just.subst)
    return f"mp {just.minor + 1} {just.major + 1}"


def format_derivation(D: Derivation) -> str:
    lines = []
    if D.premise is not None:
        lines.append(f"premise: {to_text(D.premise)}")
    for i, step in enumerate(D.steps, 1):
        lines.append(f"{i}. {to_text(step.formula)} ; {_just_text(step.justification)}")
    return "\n".join(lines) + "\n"


def _parse_subst(text: str, line: int) -> Substitution:
    text = text.strip()
    if not text:
        return ()
    if not (text.startswith("[") and text.endswith("]")):
        raise FormatError("substitution must be written [p0 := ..., ...]", line)
    out = {}
    for part in text[1:-1].split(","):
        if ":=" not in part:
            raise FormatError(f"bad substitution entry {part.strip()!r}", line)
        name, value = part.split(":=", 1)
        name = name.strip()
        if not (name.startswith("p") and name[1:].isdigit()):
            raise FormatError(f"bad variable {name!r}", line)
        out[int(name[1:])] = parse_formula(value)
    return make_subst(out)


def parse_derivation(text: str) -> Derivation:
    """Read the one-step-per-line format written by :func:`format_derivation`.

    Several ``premise:`` lines are folded into their conjunction.
    """
    premise = None
    steps = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            if line.startswith("premise:"):
                extra = parse_formula(line[len("premise:"):])
                premise = extra if premise is None else conj(premise, extra)
                continue
            number, sep, rest = line.partition(".")
            if not sep or not number.strip().isdigit():
                raise FormatError("expected 'k. <formula> ; <justification>'", lineno)
            if int(number) != len(steps) + 1:
                raise FormatError(f"step numbered {number.strip()}, expected {len(steps) + 1}", lineno)
            body, sep, just = rest.rpartition(";")
            if not sep:
                raise FormatError("missing ';' before the justification", lineno)
            formula = parse_formula(body)
            words = just.split(None, 2) if not just.strip().startswith("premise") else ["premise", just.strip()[7:]]
            kind = words[0] if words else ""
            if kind == "mp":
                parts = just.split()
                if len(parts) != 3 or not parts[1].isdigit() or not parts[2].isdigit():
                    raise FormatError("mp needs two step numbers", lineno)
                j = ModusPonens(int(parts[1]) - 1, int(parts[2]) - 1)
            elif kind == "ax":
                if len(words) < 2:
                    raise FormatError("ax needs an axiom id", lineno)
                j = IntAxiom(words[1], _parse_subst(words[2] if len(words) > 2 else "", lineno))
            elif kind == "km":
                if len(words) < 2:
                    raise FormatError("km needs an axiom letter", lineno)
                j = ProperAxiom(words[1], _parse_subst(words[2] if len(words) > 2 else "", lineno))
            elif kind == "premise":
                j = Premise(_parse_subst(words[1], lineno))
            else:
                raise FormatError(f"unknown justification {just.strip()!r}", lineno)
        except FormulaSyntaxError as exc:
            raise FormatError(f"formula: {exc}", lineno) from exc
        steps.append(Step(formula, j))
    return Derivation(steps, premise)


# ---------------------------------------------------------------- proof terms


class Proof:
    """A proof term; ``hyps`` holds the open assumptions."""

    __slots__ = ("conclusion", "hyps")


class Leaf(Proof):
    __slots__ = ("justification",)

    def __init__(self, formula: Formula, justification: Justification):
        self.conclusion = formula
        self.justification = justification
        self.hyps = frozenset()


class Assume(Proof):
    __slots__ = ()

    def __init__(self, formula: Formula):
        self.conclusion = formula
        self.hyps = frozenset([formula])


class Apply(Proof):
    __slots__ = ("minor", "major")

    def __init__(self, minor: Proof, major: Proof):
        m = major.conclusion
        if m.op != IMP or m.args[0] is not minor.conclusion:
            raise DerivationError(
                f"cannot apply {to_text(m)} to {to_text(minor.conclusion)}"
            )
        self.minor, self.major = minor, major
        self.conclusion = m.args[1]
        self.hyps = minor.hyps | major.hyps


class Discharge(Proof):
    __slots__ = ("hyp", "body")

    def __init__(self, hyp: Formula, body: Proof):
        self.hyp, self.body = hyp, body
        self.conclusion = imp(hyp, body.conclusion)
        self.hyps = body.hyps - {hyp}


def ax(id: str, *args: Formula) -> Leaf:
    subst = make_subst(enumerate(args))
    return Leaf(instance(IntAxiom(id, subst)), IntAxiom(id, subst))


def km(letter: str, lam: Formula | None = None) -> Leaf:
    subst = make_subst({0: lam}) if lam is not None else ()
    return Leaf(instance(ProperAxiom(letter, subst)), ProperAxiom(letter, subst))


def premise_instance(premise: Formula, mapping: Mapping[int, Formula] | None = None) -> Leaf:
    subst = make_subst(mapping)
    return Leaf(substitute(premise, dict(subst)), Premise(subst))


def assume(f: Formula) -> Assume:
    return Assume(f)


def mp(minor: Proof, major: Proof) -> Apply:
    return Apply(minor, major)


def lam(hyp: Formula, body: Proof) -> Discharge:
    return Discharge(hyp, body)


def _parts(f: Formula, op: str) -> tuple[Formula, Formula]:
    if f.op != op:
        raise DerivationError(f"{to_text(f)} is not a {op}")
    return f.args


def and_intro(a: Proof, b: Proof) -> Proof:
    A, B = a.conclusion, b.conclusion
    return mp(b, mp(a, ax("a3", A, B)))


def and_left(t: Proof) -> Proof:
    return mp(t, ax("a4", *_parts(t.conclusion, "and")))


def and_right(t: Proof) -> Proof:
    return mp(t, ax("a5", *_parts(t.conclusion, "and")))


def or_left(t: Proof, other: Formula) -> Proof:
    """A ⊢ A ∨ other."""
    return mp(t, ax("a6", t.conclusion, other))


def or_right(other: Formula, t: Proof) -> Proof:
    """B ⊢ other ∨ B."""
    return mp(t, ax("a7", other, t.conclusion))


def or_elim(t: Proof, f: Proof, g: Proof) -> Proof:
    """A ∨ B, A → C, B → C ⊢ C."""
    A, B = _parts(t.conclusion, "or")
    C = _parts(f.conclusion, IMP)[1]
    return mp(t, mp(g, mp(f, ax("a8", A, B, C))))


def neg_intro(f: Proof, g: Proof) -> Proof:
    """A → B, A → ¬B ⊢ ¬A."""
    A, B = _parts(f.conclusion, IMP)
    return mp(g, mp(f, ax("a9", A, B)))


def ex_falso(n: Proof, t: Proof, C: Formula) -> Proof:
    """¬A, A ⊢ C."""
    return mp(t, mp(n, ax("a10", t.conclusion, C)))


def refl(A: Formula) -> Proof:
    return lam(A, assume(A))


def compose(f: Proof, g: Proof) -> Proof:
    """A → B, B → C ⊢ A → C."""
    A = _parts(f.conclusion, IMP)[0]
    return lam(A, mp(mp(assume(A), f), g))


def iff_intro(f: Proof, g: Proof) -> Proof:
    return and_intro(f, g)


def iff_refl(A: Formula) -> Proof:
    return iff_intro(refl(A), refl(A))


# ------------------------------------------------ deduction-theorem compiler


def _lift(H: Formula, p: Proof) -> Proof:
    """H → C from a proof of C that does not use H."""
    return mp(p, ax("a1", p.conclusion, H))


def _identity(H: Formula) -> Proof:
    q = imp(H, H)
    return mp(ax("a1", H, q), mp(ax("a1", H, H), ax("a2", H, q, H)))


def _discharge(H: Formula, p: Proof, memo: dict) -> Proof:
    """A Discharge-free proof of H → C from a Discharge-free proof of C."""
    key = id(p)
    if key in memo:
        return memo[key][1]
    if H not in p.hyps:
        out = _lift(H, p)
    elif isinstance(p, Assume):
        out = _identity(H)
    else:
        assert isinstance(p, Apply)
        A, C = p.minor.conclusion, p.conclusion
        to_a = _discharge(H, p.minor, memo)
        to_ac = _discharge(H, p.major, memo)
        out = mp(to_ac, mp(to_a, ax("a2", H, A, C)))
    memo[key] = (p, out)
    return out


def compile_proof(p: Proof, memo: dict | None = None) -> Proof:
    """Remove every Discharge node, innermost first."""
    memo = {} if memo is None else memo
    key = id(p)
    if key in memo:
        return memo[key][1]
    if isinstance(p, Discharge):
        out = _discharge(p.hyp, compile_proof(p.body, memo), {})
    elif isinstance(p, Apply):
        minor, major = compile_proof(p.minor, memo), compile_proof(p.major, memo)
        out = p if minor is p.minor and major is p.major else Apply(minor, major)
    else:
        out = p
    memo[key] = (p, out)
    return out


class DerivationBuilder:
    """Collects steps, one per distinct formula."""

    def __init__(self, premise: Formula | None = None):
        self.premise = premise
        self.steps: list[Step] = []
        self.where: dict[Formula, int] = {}

    def add(self, formula: Formula, justification: Justification) -> int:
        found = self.where.get(formula)
        if found is not None:
            return found
        self.steps.append(Step(formula, justification))
        self.where[formula] = len(self.steps) - 1
        return len(self.steps) - 1

    def emit(self, p: Proof) -> int:
        p = compile_proof(p)
        if p.hyps:
            names = ", ".join(sorted(to_text(h) for h in p.hyps))
            raise DerivationError(f"open assumptions remain: {names}")
        return self._emit(p)

    def _emit(self, p: Proof) -> int:
        found = self.where.get(p.conclusion)
        if found is not None:
            return found
        if isinstance(p, Leaf):
            return self.add(p.conclusion, p.justification)
        assert isinstance(p, Apply)
        i = self._emit(p.minor)
        j = self._emit(p.major)
        return self.add(p.conclusion, ModusPonens(i, j))

    def derivation(self) -> Derivation:
        return Derivation(self.steps, self.premise)


def derive(p: Proof, premise: Formula | None = None) -> Derivation:
    """A derivation ending in the conclusion of ``p``."""
    b = DerivationBuilder(premise)
    end = b.emit(p)
    # a subproof may already reach the conclusion; later steps are then unused
    return Derivation(b.steps[: end + 1], premise)
