"""The upset algebra of the spectrum, the Stone map h, the δ operator, the
δ-subalgebras and the tower A_0 ≼ A_1 ≼ ...
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import AlgebraEmbedding, HeytingAlgebra, find_isomorphism, subalgebra_generated
from .errors import IdentityViolation
from .filters import PrimeFilterPoset, excluding_masks, prime_filters

ALL = "all"


@dataclass(frozen=True)
class UpSet:
    spectrum: PrimeFilterPoset
    members: int

    def __str__(self) -> str:
        return self.spectrum.describe(self.members)


def upsets(S: PrimeFilterPoset) -> list[int]:
    """All upward-closed sets of spectrum points, sorted by bitset value."""
    # supersets first, so a point may join only once everything above it has
    order = sorted(range(S.size), key=lambda i: -bin(S.members[i]).count("1"))
    found = []

    def walk(k: int, chosen: int) -> None:
        if k == len(order):
            found.append(chosen)
            return
        i = order[k]
        walk(k + 1, chosen)
        if S.strictly_above[i] & ~chosen == 0:
            walk(k + 1, chosen | 1 << i)

    walk(0, 0)
    return sorted(found)


def _set_label(S: PrimeFilterPoset, bits: int) -> str:
    return "{" + ",".join(f"F{i}" for i in S.points(bits)) + "}"


def upset_algebra(S: PrimeFilterPoset) -> HeytingAlgebra:
    """Up(S) with ∩, ∪ and X→Y = {F : every F' ⊇ F in X is in Y}.

    Elements equal to some h(x) are labelled by x; the carrier keeps the
    bitset of each upset.
    """
    sets = upsets(S)
    pos = {bits: i for i, bits in enumerate(sets)}
    A = S.algebra
    names = {}
    for x in range(A.n):
        names.setdefault(S.containing(x), A.labels[x])
    labels = [names.get(bits, _set_label(S, bits)) for bits in sets]
    m = len(sets)
    leq = np.array([[(u & ~v) == 0 for v in sets] for u in sets], dtype=bool).reshape(m, m)
    meet = [[pos[u & v] for v in sets] for u in sets]
    join = [[pos[u | v] for v in sets] for u in sets]
    above = S.above

    def arrow(u: int, v: int) -> int:
        return sum(1 << i for i in range(S.size) if above[i] & u & ~v == 0)

    imp = [[pos[arrow(u, v)] for v in sets] for u in sets]
    return HeytingAlgebra(labels, leq, meet, join, imp, carrier=sets, check=True)


@dataclass(frozen=True, eq=False)
class StoneData:
    algebra: HeytingAlgebra
    spectrum: PrimeFilterPoset
    upset_algebra: HeytingAlgebra
    h: AlgebraEmbedding  # A -> Up(S_A)
    image: HeytingAlgebra

    def h_bits(self, x: int) -> int:
        return self.spectrum.containing(x)

    def h_upset(self, x: int) -> UpSet:
        return UpSet(self.spectrum, self.h_bits(x))

    def upset_index(self, bits: int) -> int:
        return self.upset_algebra.carrier.index(bits)

    @property
    def is_onto(self) -> bool:
        return self.h.is_onto()


def stone_embed(A: HeytingAlgebra) -> StoneData:
    S = prime_filters(A)
    up = upset_algebra(S)
    where = {bits: i for i, bits in enumerate(up.carrier)}
    h = AlgebraEmbedding(A, up, [where[S.containing(x)] for x in range(A.n)]).validate()
    image, _ = subalgebra_generated(up, h.map)
    return StoneData(A, S, up, h, image)


def delta_bits(S: PrimeFilterPoset, X: int) -> int:
    """δX = {F : every strictly larger prime filter lies in X}."""
    return sum(1 << i for i in range(S.size) if S.strictly_above[i] & ~X == 0)


def delta(S: PrimeFilterPoset, X: UpSet | int) -> UpSet:
    bits = X.members if isinstance(X, UpSet) else int(X)
    return UpSet(S, delta_bits(S, bits))


def delta_h_bits(sd: StoneData, x: int) -> int:
    S = sd.spectrum
    hx = S.containing(x)
    direct = delta_bits(S, hx)
    _, top = excluding_masks(S, x)
    if direct != hx | top:
        raise IdentityViolation(f"δh({sd.algebra.labels[x]}) differs from h ∪ max h̄")
    return direct


def delta_h(sd: StoneData, x) -> UpSet:
    """δ(h(x)), cross-checked against h(x) ∪ max h̄(x)."""
    return UpSet(sd.spectrum, delta_h_bits(sd, sd.algebra.index(x)))


def delta_algebra(A: HeytingAlgebra, X: Iterable | str = ALL, sd: StoneData | None = None):
    """δ[A_X]: the subalgebra of Up(S_A) generated by h(A) and δh(x), x ∈ X.

    Returns the algebra and the embedding x ↦ h(x).
    """
    sd = sd or stone_embed(A)
    xs = range(A.n) if isinstance(X, str) and X == ALL else [A.index(x) for x in X]
    up = sd.upset_algebra
    extra = []
    for x in xs:
        idx = sd.upset_index(delta_h_bits(sd, x))
        extra.append(idx)
    D, incl = subalgebra_generated(up, [*sd.h.map, *extra])
    back = {v: i for i, v in enumerate(incl.map)}
    labels = list(D.labels)
    for x, idx in zip(xs, extra):
        if not labels[back[idx]].startswith("{"):
            continue
        labels[back[idx]] = f"δ{A.labels[x]}"
    D = HeytingAlgebra(labels, D.leq, D.meet, D.join, D.imp, carrier=D.carrier)
    return D, AlgebraEmbedding(A, D, [back[v] for v in sd.h.map])


@dataclass(frozen=True, eq=False)
class Tower:
    algebras: list
    embeddings: list  # embeddings[i]: A_i -> A_{i+1}
    stabilized: bool
    stable_at: int | None

    def compose(self, i: int, j: int) -> AlgebraEmbedding:
        """φ_ij : A_i -> A_j for i <= j."""
        if not 0 <= i <= j < len(self.algebras):
            raise ValueError("need 0 <= i <= j < number of algebras")
        out = AlgebraEmbedding(self.algebras[i], self.algebras[i], range(self.algebras[i].n))
        for k in range(i, j):
            out = out.compose(self.embeddings[k])
        return out


def tower(A: HeytingAlgebra, max_steps: int) -> Tower:
    """Iterate A_{i+1} = δ[A_i] until the canonical embedding is onto."""
    algebras, embeddings = [A], []
    for step in range(max_steps):
        nxt, emb = delta_algebra(algebras[-1])
        algebras.append(nxt)
        embeddings.append(emb)
        if emb.is_onto() and find_isomorphism(algebras[-2], nxt) is not None:
            return Tower(algebras, embeddings, True, step)
    return Tower(algebras, embeddings, False, None)
