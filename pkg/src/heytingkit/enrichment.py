"""Enrichable elements, E-pairs, the box operator, tilde negations,
τ-expansions and packing."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import AlgebraEmbedding, HeytingAlgebra, closure
from .errors import IdentityViolation, IncompatibleTau, InvalidEPair, InvalidTilde
from .filters import special_filters
from .stone import delta_algebra, delta_h_bits, stone_embed


def enriches(A: HeytingAlgebra, a, b) -> bool:
    """True when a ≤ b, b→a = a and b ≤ x ∨ (x→a) for every x."""
    a, b = A.index(a), A.index(b)
    if not A.leq[a, b] or A.imp[b, a] != a:
        return False
    xs = np.arange(A.n)
    return bool(A.leq[b, A.join[xs, A.imp[xs, a]]].all())


def enrichment(A: HeytingAlgebra, a):
    """The element enriching ``a``, or None.

    Computed as ⋀F_a followed by the defining test, and checked against a
    scan over all elements.
    """
    a = A.index(a)
    _, f_a = special_filters(A, a)
    candidate = A.meet_all(f_a.elements())
    via_meet = candidate if enriches(A, a, candidate) else None
    scan = [b for b in range(A.n) if enriches(A, a, b)]
    if len(scan) > 1:
        raise IdentityViolation(f"{A.labels[a]} is enriched by several elements")
    via_scan = scan[0] if scan else None
    if via_meet != via_scan:
        raise IdentityViolation(f"meet of F_a and scan disagree at {A.labels[a]}")
    return via_meet


def box_operator(A: HeytingAlgebra):
    """x ↦ enrichment(x) when every element is enrichable, else None."""
    table = [enrichment(A, x) for x in range(A.n)]
    if any(v is None for v in table):
        return None
    return tuple(table)


def km_conditions(A: HeytingAlgebra, box: Sequence[int]) -> bool:
    """x ≤ □x, □x → x ≤ x and □x ≤ y ∨ (y → x) for all x, y."""
    box = np.asarray(box)
    xs = np.arange(A.n)
    if not A.leq[xs, box].all():
        return False
    if not A.leq[A.imp[box, xs], xs].all():
        return False
    y = xs[None, :]
    return bool(A.leq[box[:, None], A.join[y, A.imp[y, xs[:, None]]]].all())


# ------------------------------------------------------------------- E-pairs


@dataclass(frozen=True)
class EPair:
    algebra: HeytingAlgebra = field(compare=False, repr=False)
    a: int
    a_star: int

    def validate(self) -> "EPair":
        if not enriches(self.algebra, self.a, self.a_star):
            A = self.algebra
            raise InvalidEPair(f"({A.labels[self.a]}, {A.labels[self.a_star]}) is not an E-pair")
        return self


def e_pairs(A: HeytingAlgebra) -> list[EPair]:
    return [EPair(A, a, b) for a in range(A.n) for b in range(A.n) if enriches(A, a, b)]


@dataclass(frozen=True)
class TildeTable:
    algebra: HeytingAlgebra = field(compare=False, repr=False)
    t: tuple

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(int(v) for v in self.t))

    def __call__(self, x: int) -> int:
        return self.t[x]

    @property
    def at_top(self) -> int:
        return self.t[self.algebra.top]

    @property
    def at_bot(self) -> int:
        return self.t[self.algebra.bot]


def tilde_from_pair(p: EPair) -> TildeTable:
    """t(x) = (x→a) ∧ a*."""
    p.validate()
    A = p.algebra
    return TildeTable(A, A.meet[A.imp[np.arange(A.n), p.a], p.a_star])


def pair_from_tilde(t: TildeTable) -> EPair:
    """(t(1), t(0))."""
    report = check_tilde(t.algebra, t.t)
    if not report.is_tilde:
        raise InvalidTilde(f"not a tilde negation: fails {report.failed()}")
    return EPair(t.algebra, t.at_top, t.at_bot).validate()


@dataclass
class TildeReport:
    definition: dict
    properties: dict | None = None

    @property
    def is_tilde(self) -> bool:
        return all(self.definition.values())

    @property
    def ok(self) -> bool:
        return self.is_tilde and self.properties is not None and all(self.properties.values())

    def failed(self) -> list[str]:
        out = [f"def-{k}" for k, v in self.definition.items() if not v]
        if self.properties:
            out += [f"prop-{k}" for k, v in self.properties.items() if not v]
        return out


def check_tilde(A: HeytingAlgebra, table: Sequence[int]) -> TildeReport:
    """Check the four defining identities and, if they hold, the derived ones."""
    t = np.asarray(table, dtype=np.int64)
    if t.shape != (A.n,):
        raise InvalidTilde("table length must match the algebra")
    leq, meet, join, imp = A.leq, A.meet, A.join, A.imp
    xs = np.arange(A.n)
    x, y = xs[:, None], xs[None, :]
    one, zero = t[A.top], t[A.bot]
    definition = {
        "a": bool(leq[imp[x, y], imp[t[y], t[x]]].all()),
        "b": bool(leq[meet[xs, t], one].all()),
        "c": bool(leq[zero, join[xs, t]].all()),
        "d": bool(imp[zero, one] == one),
    }
    report = TildeReport(definition)
    if not report.is_tilde:
        return report
    tt = t[t]
    interval = [v for v in range(A.n) if leq[one, v] and leq[v, zero]]
    iv = np.array(interval)
    report.properties = {
        "a": bool(leq[one, t].all() and leq[t, zero].all()),
        "b": bool((meet[t, tt] == one).all()),
        "c": bool((join[t, tt] == zero).all()),
        "d": bool(tt[A.bot] == one),
        "e": bool(tt[A.top] == zero),
        "f": bool((meet[imp[t, tt], imp[tt, t]] == one).all()),
        "g": bool(leq[meet[xs, t], tt].all() and leq[tt, join[xs, t]].all()),
        "h": all(t[v] == one for v in range(A.n) if leq[zero, v]),
        "i": bool((t == meet[imp[xs, one], zero]).all()),
        "j": bool((t[join[x, y]] == meet[t[x], t[y]]).all()),
        "k": bool(
            np.isin(t[iv], iv).all()
            and (meet[iv, t[iv]] == one).all()
            and (join[iv, t[iv]] == zero).all()
        ),
        "l": bool((t[tt] == t).all()),
        "antitone": bool((~leq[x, y] | leq[t[y], t[x]]).all()),
    }
    return report


# ------------------------------------------------------------ τ-expansions


@dataclass(frozen=True, eq=False)
class TauExpansion:
    algebra: HeytingAlgebra
    tau: int
    tilde: TildeTable | None = None

    def validate(self) -> "TauExpansion":
        if self.tilde is not None:
            if not check_tilde(self.algebra, self.tilde.t).is_tilde:
                raise InvalidTilde("tilde table fails the defining identities")
            if self.tilde.at_top != self.tau:
                raise InvalidTilde("a tilde expansion needs ~1 = τ")
        return self


def tilde_expansion(A: HeytingAlgebra, a) -> TauExpansion:
    """A with τ = a and ~ built from the E-pair of a."""
    a = A.index(a)
    star = enrichment(A, a)
    if star is None:
        raise InvalidEPair(f"{A.labels[a]} is not enrichable")
    return TauExpansion(A, a, tilde_from_pair(EPair(A, a, star)))


def tilde_closure(B: HeytingAlgebra, tau: int, t: Sequence[int], seeds) -> list[int]:
    """Least subset containing ``seeds``, 0, 1 and τ, closed under ∧ ∨ → and ~."""
    have = set(closure(B, [*seeds, tau]))
    while True:
        extra = {t[x] for x in have} - have
        if not extra:
            return sorted(have)
        have = set(closure(B, [*have, *extra]))


def closure_trichotomy(outer: TauExpansion, image: Sequence[int]) -> tuple[bool, bool]:
    """(image closed under ~, ~0 in image) for a subuniverse containing τ."""
    B, t = outer.algebra, outer.tilde.t
    img = set(image)
    return all(t[x] in img for x in img), t[B.bot] in img


def check_packing(inner: TauExpansion, outer: TauExpansion, e: AlgebraEmbedding) -> bool:
    """Is the τ~-expansion ``outer`` generated by the image of ``inner``?"""
    if outer.tilde is None:
        raise InvalidTilde("the outer expansion needs a tilde")
    outer.validate()
    if e.map[inner.tau] != outer.tau:
        raise IncompatibleTau("embedding does not send τ to τ")
    B, t = outer.algebra, outer.tilde.t
    image = list(e.map)
    by_tilde = tilde_closure(B, outer.tau, t, image)
    by_generation = closure(B, [*image, outer.tau, t[B.bot]])
    if by_tilde != by_generation:
        raise IdentityViolation("~-closure and generation by |A| ∪ {~0} differ")
    return len(by_tilde) == B.n


def canonical_packing(A: HeytingAlgebra, a):
    """A_τ with τ = a inside δ[A_a] with the tilde of (h(a), δh(a))."""
    a = A.index(a)
    sd = stone_embed(A)
    D, h = delta_algebra(A, [a], sd=sd)
    star = D.carrier.index(delta_h_bits(sd, a))
    inner = TauExpansion(A, a)
    outer = TauExpansion(D, h.map[a], tilde_from_pair(EPair(D, h.map[a], star)))
    return inner, outer, h
