"""Filters, prime filters and the spectrum maps of an embedded pair.

Subsets of an algebra are int bitsets (bit ``x`` set when element ``x`` is a
member); sets of prime filters are bitsets over spectrum positions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

import numpy as np

from .core import AlgebraEmbedding, HeytingAlgebra
from .errors import IdentityViolation, PreconditionViolated


@dataclass(frozen=True)
class Filter:
    algebra: HeytingAlgebra = field(compare=False, repr=False)
    members: int

    def __contains__(self, x: int) -> bool:
        return bool(self.members >> x & 1)

    def elements(self) -> list[int]:
        return self.algebra.elements_of(self.members)

    @property
    def is_proper(self) -> bool:
        return self.algebra.bot not in self

    def labels(self) -> list[str]:
        return [self.algebra.labels[x] for x in self.elements()]

    def __str__(self) -> str:
        return "{" + ",".join(self.labels()) + "}"


def is_filter(A: HeytingAlgebra, bits: int) -> bool:
    members = A.elements_of(bits)
    if A.top not in members:
        return False
    for x in members:
        if A.up[x] & ~bits:
            return False
        for y in members:
            if not bits >> int(A.meet[x, y]) & 1:
                return False
    return True


def is_prime(A: HeytingAlgebra, bits: int) -> bool:
    """Proper, and x ∨ y in the set forces x or y in it (bits must be a filter)."""
    if bits >> A.bot & 1:
        return False
    for x in range(A.n):
        if bits >> x & 1:
            continue
        for y in range(x, A.n):
            if not bits >> y & 1 and bits >> int(A.join[x, y]) & 1:
                return False
    return True


def generated_filter(A: HeytingAlgebra, X: Iterable[int]) -> Filter:
    """The least filter containing X.

    Finite meets of X are closed under ∧, and in a finite algebra they have a
    least member, so the result is the principal filter of ⋀X.
    """
    return Filter(A, A.up[A.meet_all(A.index(x) for x in X)])


def all_filters(A: HeytingAlgebra) -> list[Filter]:
    """Every filter of a finite algebra is principal: one per element."""
    return sorted({Filter(A, A.up[x]) for x in range(A.n)}, key=lambda f: f.members)


class PrimeFilterPoset:
    """The proper prime filters of A ordered by inclusion.

    Filters are sorted by bitset value; position ``i`` in :attr:`filters`
    is the spectrum point ``i``.
    """

    def __init__(self, A: HeytingAlgebra):
        self.algebra = A
        found = [f for f in all_filters(A) if is_prime(A, f.members)]
        self.filters: tuple[Filter, ...] = tuple(found)
        self.members: tuple[int, ...] = tuple(f.members for f in found)
        self.size = len(found)
        m = self.members
        self.order = np.array([[(a & ~b) == 0 for b in m] for a in m], dtype=bool).reshape(self.size, self.size)
        self.order.setflags(write=False)
        self.position = {bits: i for i, bits in enumerate(m)}
        # bitsets of spectrum points: at-or-above and strictly above each point
        self.above = tuple(sum(1 << j for j in range(self.size) if self.order[i, j]) for i in range(self.size))
        self.strictly_above = tuple(self.above[i] & ~(1 << i) for i in range(self.size))
        self.full = (1 << self.size) - 1

    def __len__(self) -> int:
        return self.size

    def __iter__(self):
        return iter(self.filters)

    def points(self, bits: int) -> list[int]:
        return [i for i in range(self.size) if bits >> i & 1]

    def containing(self, x: int) -> int:
        """h(x): the points whose filter contains x."""
        return sum(1 << i for i, f in enumerate(self.members) if f >> x & 1)

    def maximal(self, bits: int) -> int:
        """The ⊆-maximal points of a set of points."""
        return sum(1 << i for i in self.points(bits) if not self.strictly_above[i] & bits)

    def describe(self, bits: int) -> str:
        return "{" + ", ".join(str(self.filters[i]) for i in self.points(bits)) + "}"


def prime_filters(A: HeytingAlgebra) -> PrimeFilterPoset:
    return PrimeFilterPoset(A)


def excluding_masks(S: PrimeFilterPoset, a: int) -> tuple[int, int]:
    """(h̄(a), max h̄(a)) as bitsets of spectrum points."""
    excluded = S.full & ~S.containing(a)
    return excluded, S.maximal(excluded)


def excluding_and_max(A: HeytingAlgebra | PrimeFilterPoset, a) -> tuple[list[Filter], list[Filter]]:
    """Prime filters not containing ``a`` and the maximal ones among them."""
    S = A if isinstance(A, PrimeFilterPoset) else prime_filters(A)
    excluded, top = excluding_masks(S, S.algebra.index(a))
    return [S.filters[i] for i in S.points(excluded)], [S.filters[i] for i in S.points(top)]


def special_filters(A: HeytingAlgebra, a) -> tuple[Filter, Filter]:
    """(X_a, F_a) where X_a = {x : x→a = a}; F_a is computed three ways."""
    a = A.index(a)
    xs = range(A.n)
    x_a = A.bits_of(x for x in xs if A.imp[x, a] == a)
    via_join = A.bits_of(int(A.join[x, A.imp[x, a]]) for x in xs)
    via_test = A.bits_of(y for y in xs if A.leq[A.imp[y, a], y])
    via_meet = x_a & A.up[a]
    if not via_join == via_test == via_meet:
        raise IdentityViolation(f"F_a characterizations disagree at a={A.labels[a]}")
    return Filter(A, x_a), Filter(A, via_join)


# ----------------------------------------------------------- embedded pairs


class SpectrumMaps:
    """φ: S_B → S_A (restriction along ``e``), its image map φ̃ on sets of
    points and the preimage map φ_inv.  Sets of points are bitsets."""

    def __init__(self, e: AlgebraEmbedding):
        e.validate()
        self.embedding = e
        self.source = prime_filters(e.source)
        self.target = prime_filters(e.target)
        phi = []
        for g in self.target.members:
            restricted = e.source.bits_of(x for x in range(e.source.n) if g >> e.map[x] & 1)
            if restricted not in self.source.position:
                raise IdentityViolation("restriction of a prime filter is not prime")
            phi.append(self.source.position[restricted])
        self.phi: tuple[int, ...] = tuple(phi)

    def phi_tilde(self, bits: int) -> int:
        out = 0
        for j in self.target.points(bits):
            out |= 1 << self.phi[j]
        return out

    def phi_inv(self, bits: int) -> int:
        return sum(1 << j for j, i in enumerate(self.phi) if bits >> i & 1)

    @cached_property
    def is_surjective(self) -> bool:
        return set(self.phi) == set(range(self.source.size))


def pair_spectrum_maps(e: AlgebraEmbedding) -> SpectrumMaps:
    return SpectrumMaps(e)


def extend_prime_filter(e: AlgebraEmbedding, F: Filter | int, a) -> Filter:
    """A prime B-filter G with G ∩ A = F and a ∉ G.

    Among the B-filters restricting to F (all principal, ↑y), a ⊆-maximal
    one has a ≤-minimal generator y; the first such y in index order wins.
    """
    A, B = e.source, e.target
    a = A.index(a)
    bits = F.members if isinstance(F, Filter) else int(F)
    if not is_filter(A, bits) or not is_prime(A, bits):
        raise PreconditionViolated("F must be a prime filter of the source algebra")
    if bits >> a & 1:
        raise PreconditionViolated("a must lie outside F")

    def restrict(gbits: int) -> int:
        return A.bits_of(x for x in range(A.n) if gbits >> e.map[x] & 1)

    family = [y for y in range(B.n) if restrict(B.up[y]) == bits]
    minimal = [y for y in family if not any(z != y and B.leq[z, y] for z in family)]
    G = B.up[minimal[0]]
    if not is_prime(B, G) or G >> e.map[a] & 1:
        raise IdentityViolation("maximal filter over F is not a prime filter avoiding a")
    return Filter(B, G)
