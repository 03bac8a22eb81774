"""Finite Heyting algebras stored as dense operation tables.

Elements are the integers ``0..n-1``; each carries a display label.  The
order is an ``n x n`` boolean matrix and ``meet``, ``join``, ``imp`` are
``n x n`` integer tables, all computed once at construction time.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    FormatError,
    InvalidEmbedding,
    NoRelativePseudoComplement,
    NotALattice,
    NotAPartialOrder,
    NotDistributive,
)


def _frozen(array, dtype):
    out = np.array(array, dtype=dtype)
    out.setflags(write=False)
    return out


class HeytingAlgebra:
    """A finite Heyting algebra given by its order and operation tables.

    Instances are immutable.  Use :meth:`from_order` (or
    :func:`build_algebra`) to compute the tables from an order relation; the
    plain constructor trusts tables that are already known to be correct and
    only validates them when ``check`` is true.

    ``carrier`` is an optional per-element payload.  Upset algebras use it to
    remember which set of prime filters each element is.
    """

    def __init__(self, labels, leq, meet, join, imp, *, carrier=None, check=False):
        self.labels = tuple(str(label) for label in labels)
        self.n = len(self.labels)
        if self.n < 1:
            raise NotALattice("an algebra needs at least one element")
        self.leq = _frozen(leq, bool)
        self.meet = _frozen(meet, np.int64)
        self.join = _frozen(join, np.int64)
        self.imp = _frozen(imp, np.int64)
        self.bot = int(np.flatnonzero(self.leq.all(axis=1))[0])
        self.top = int(np.flatnonzero(self.leq.all(axis=0))[0])
        self.neg = _frozen(self.imp[:, self.bot], np.int64)
        self.carrier = None if carrier is None else tuple(carrier)
        # bitsets of principal up- and down-sets, used by the filter code
        weights = [1 << i for i in range(self.n)]
        self.up = tuple(sum(w for w, b in zip(weights, row) if b) for row in self.leq)
        self.down = tuple(sum(w for w, b in zip(weights, col) if b) for col in self.leq.T)
        self._index = {label: i for i, label in enumerate(self.labels)}
        if check:
            self.validate()

    @classmethod
    def from_order(cls, labels, leq, *, carrier=None) -> "HeytingAlgebra":
        leq = np.asarray(leq, dtype=bool)
        check_partial_order(leq, labels)
        meet, join = lattice_tables(leq, labels)
        check_distributive(meet, join, labels)
        imp = implication_table(leq, meet, labels)
        return cls(labels, leq, meet, join, imp, carrier=carrier)

    def validate(self) -> None:
        """Recompute every table from ``leq`` and compare."""
        check_partial_order(self.leq, self.labels)
        meet, join = lattice_tables(self.leq, self.labels)
        if not (np.array_equal(meet, self.meet) and np.array_equal(join, self.join)):
            raise NotALattice("meet/join tables disagree with the order")
        check_distributive(meet, join, self.labels)
        imp = implication_table(self.leq, meet, self.labels)
        if not np.array_equal(imp, self.imp):
            raise NoRelativePseudoComplement("implication table is not the residual of meet")

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"HeytingAlgebra({list(self.labels)})"

    def index(self, label) -> int:
        """Element index for a label (ints pass through)."""
        if isinstance(label, (int, np.integer)):
            return int(label)
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def label(self, x: int) -> str:
        return self.labels[x]

    def meet_all(self, elements: Iterable[int]) -> int:
        out = self.top
        for x in elements:
            out = int(self.meet[out, x])
        return out

    def join_all(self, elements: Iterable[int]) -> int:
        out = self.bot
        for x in elements:
            out = int(self.join[out, x])
        return out

    def elements_of(self, bits: int) -> list[int]:
        return [i for i in range(self.n) if bits >> i & 1]

    def bits_of(self, elements: Iterable[int]) -> int:
        out = 0
        for x in elements:
            out |= 1 << int(x)
        return out


def check_partial_order(leq: np.ndarray, labels: Sequence[str]) -> None:
    n = leq.shape[0]
    if leq.shape != (n, n):
        raise NotAPartialOrder("order table must be square")
    missing = np.flatnonzero(~np.diag(leq))
    if missing.size:
        raise NotAPartialOrder(f"not reflexive at {labels[missing[0]]}")
    both = leq & leq.T & ~np.eye(n, dtype=bool)
    if both.any():
        x, y = np.argwhere(both)[0]
        raise NotAPartialOrder(f"not antisymmetric: {labels[x]} <= {labels[y]} <= {labels[x]}")
    square = (leq.astype(np.int64) @ leq.astype(np.int64)) > 0
    bad = square & ~leq
    if bad.any():
        x, z = np.argwhere(bad)[0]
        raise NotAPartialOrder(f"not transitive: {labels[x]} <= ? <= {labels[z]}")


def _bounds_table(bounds: np.ndarray, leq: np.ndarray, want_greatest: bool):
    # bounds[x, y, w] says w is a lower (upper) bound of x and y
    order = leq if want_greatest else leq.T
    counts = bounds.astype(np.int64) @ order.astype(np.int64)
    best = bounds & (counts == bounds.sum(axis=2, keepdims=True))
    return best


def lattice_tables(leq: np.ndarray, labels: Sequence[str]):
    """Meet and join tables of a finite poset, or NotALattice."""
    lower = leq.T[:, None, :] & leq.T[None, :, :]
    upper = leq[:, None, :] & leq[None, :, :]
    glb = _bounds_table(lower, leq, want_greatest=True)
    lub = _bounds_table(upper, leq, want_greatest=False)
    for name, table in (("meet", glb), ("join", lub)):
        found = table.any(axis=2)
        if not found.all():
            x, y = np.argwhere(~found)[0]
            raise NotALattice(f"{labels[x]} and {labels[y]} have no {name}")
    return glb.argmax(axis=2), lub.argmax(axis=2)


def check_distributive(meet: np.ndarray, join: np.ndarray, labels: Sequence[str]) -> None:
    n = meet.shape[0]
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    lhs = meet[x, join[y, z]]
    rhs = join[meet[x, y], meet[x, z]]
    bad = lhs != rhs
    if bad.any():
        triple = tuple(int(v) for v in np.argwhere(bad)[0])
        names = ", ".join(labels[v] for v in triple)
        raise NotDistributive(f"distributivity fails at ({names})", triple=triple)


def implication_table(leq: np.ndarray, meet: np.ndarray, labels: Sequence[str]) -> np.ndarray:
    """imp[x, y] is the greatest z with z ∧ x <= y."""
    n = leq.shape[0]
    # cand[x, y, z] = (z ∧ x <= y)
    zx = meet.T  # zx[x, z] = z ∧ x
    cand = leq[zx[:, None, :], np.arange(n)[None, :, None]]
    counts = cand.astype(np.int64) @ leq.astype(np.int64)
    best = cand & (counts == cand.sum(axis=2, keepdims=True))
    found = best.any(axis=2)
    if not found.all():
        x, y = np.argwhere(~found)[0]
        raise NoRelativePseudoComplement(f"{labels[x]} -> {labels[y]} does not exist")
    return best.argmax(axis=2)


def build_algebra(elements: Sequence[str], leq_pairs: Iterable[tuple[str, str]]) -> HeytingAlgebra:
    """Build an algebra from labels and generating order pairs ``(x, y)`` meaning x <= y.

    The reflexive-transitive closure of the pairs is taken.
    """
    labels = [str(e) for e in elements]
    if len(set(labels)) != len(labels):
        raise NotAPartialOrder("duplicate element labels")
    index = {label: i for i, label in enumerate(labels)}
    n = len(labels)
    rel = np.eye(n, dtype=bool)
    for x, y in leq_pairs:
        if x not in index or y not in index:
            raise KeyError(f"order pair ({x}, {y}) uses an undeclared element")
        rel[index[x], index[y]] = True
    for k in range(n):  # Warshall
        rel |= rel[:, k:k + 1] & rel[k:k + 1, :]
    return HeytingAlgebra.from_order(labels, rel)


def parse_algebra(text: str) -> HeytingAlgebra:
    """Read ``elements: a b c`` and ``leq: x y`` lines; ``#`` starts a comment."""
    elements = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("elements", "leq"):
            raise FormatError("expected 'elements: ...' or 'leq: x y'", lineno)
        words = rest.split()
        if key == "elements":
            if elements is not None:
                raise FormatError("elements declared twice", lineno)
            if not words:
                raise FormatError("no elements declared", lineno)
            if len(set(words)) != len(words):
                raise FormatError("an element is declared twice", lineno)
            elements = words
            continue
        if elements is None:
            raise FormatError("leq before elements", lineno)
        if len(words) != 2:
            raise FormatError("leq takes exactly two elements", lineno)
        for w in words:
            if w not in elements:
                raise FormatError(f"undeclared element {w!r}", lineno)
        pairs.append((words[0], words[1]))
    if elements is None:
        raise FormatError("no 'elements:' line")
    return build_algebra(elements, pairs)


def format_algebra(A: HeytingAlgebra) -> str:
    """Text form listing the covering pairs of the order."""
    if any(len(label.split()) != 1 or "#" in label or ":" in label for label in A.labels):
        raise ValueError("labels must be single words to be written out")
    lines = ["elements: " + " ".join(A.labels)]
    for x in range(A.n):
        for y in range(A.n):
            if x != y and A.leq[x, y] and not any(
                z not in (x, y) and A.leq[x, z] and A.leq[z, y] for z in range(A.n)
            ):
                lines.append(f"leq: {A.labels[x]} {A.labels[y]}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- fixtures

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def chain(n: int) -> HeytingAlgebra:
    """The n-element chain 0 < a < b < ... < 1."""
    if n < 1:
        raise ValueError("a chain needs n >= 1")
    if n == 1:
        labels = ["0"]
    else:
        middle = [_LETTERS[i] if n - 2 <= len(_LETTERS) else f"c{i + 1}" for i in range(n - 2)]
        labels = ["0", *middle, "1"]
    i = np.arange(n)
    leq = i[:, None] <= i[None, :]
    meet = np.minimum(i[:, None], i[None, :])
    join = np.maximum(i[:, None], i[None, :])
    imp = np.where(leq, n - 1, i[None, :])
    return HeytingAlgebra(labels, leq, meet, join, imp)


def boolean(k: int) -> HeytingAlgebra:
    """The Boolean algebra of subsets of a k-element set; element i is a bitmask."""
    if k < 0:
        raise ValueError("boolean needs k >= 0")
    n = 1 << k
    full = n - 1
    labels = []
    for mask in range(n):
        if mask == 0:
            labels.append("0")
        elif mask == full:
            labels.append("1")
        else:
            labels.append("".join(_LETTERS[j] for j in range(k) if mask >> j & 1))
    i = np.arange(n)
    a, b = i[:, None], i[None, :]
    leq = (a & ~b) == 0
    imp = (~a | b) & full
    return HeytingAlgebra(labels, leq, a & b, a | b, imp)


def product(first: HeytingAlgebra, second: HeytingAlgebra) -> HeytingAlgebra:
    """Componentwise product; element ``i * len(second) + j`` is the pair (i, j)."""
    m = second.n
    labels = [f"({x},{y})" for x in first.labels for y in second.labels]
    pairs = [(i, j) for i in range(first.n) for j in range(m)]
    fi = np.array([p[0] for p in pairs])
    sj = np.array([p[1] for p in pairs])

    def combine(t1, t2):
        return t1[fi[:, None], fi[None, :]] * m + t2[sj[:, None], sj[None, :]]

    leq = first.leq[fi[:, None], fi[None, :]] & second.leq[sj[:, None], sj[None, :]]
    return HeytingAlgebra(
        labels,
        leq,
        combine(first.meet, second.meet),
        combine(first.join, second.join),
        combine(first.imp, second.imp),
    )


def fixture(kind: str) -> HeytingAlgebra:
    """Parse fixture names such as ``"chain 3"``, ``"boolean 2"`` or
    ``"product(chain 3, chain 2)"``."""
    text = kind.strip()
    m = re.fullmatch(r"chain\s*(\d+)", text)
    if m:
        return chain(int(m.group(1)))
    m = re.fullmatch(r"boolean\s*(\d+)", text)
    if m:
        return boolean(int(m.group(1)))
    m = re.fullmatch(r"product\s*\((.*)\)", text)
    if m:
        inner = m.group(1)
        depth = 0
        for pos, ch in enumerate(inner):
            depth += ch == "("
            depth -= ch == ")"
            if ch == "," and depth == 0:
                return product(fixture(inner[:pos]), fixture(inner[pos + 1:]))
    raise ValueError(f"unknown fixture {kind!r}")


def fixture_corpus(max_size: int = 16) -> dict[str, HeytingAlgebra]:
    """Chains up to 6, Boolean algebras up to 3 atoms, and pairwise products
    of those with at most ``max_size`` elements."""
    base = {f"chain {n}": chain(n) for n in range(1, 7)}
    base.update({f"boolean {k}": boolean(k) for k in range(0, 4)})
    corpus = dict(base)
    names = [name for name, alg in base.items() if alg.n >= 2]
    for i, left in enumerate(names):
        for right in names[i:]:
            if base[left].n * base[right].n <= max_size:
                corpus[f"product({left}, {right})"] = product(base[left], base[right])
    return corpus


# ------------------------------------------------------------- embeddings


@dataclass(frozen=True, eq=False)
class AlgebraEmbedding:
    """An injective homomorphism ``source -> target`` given as an index table."""

    source: HeytingAlgebra
    target: HeytingAlgebra
    map: tuple

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image_bits(self) -> int:
        return self.target.bits_of(self.map)

    def problems(self) -> list[str]:
        src, dst, f = self.source, self.target, np.array(self.map)
        if len(f) != src.n:
            return ["map has the wrong length"]
        found = []
        if len(set(self.map)) != src.n:
            found.append("not injective")
        if f[src.bot] != dst.bot or f[src.top] != dst.top:
            found.append("bounds not preserved")
        for name in ("meet", "join", "imp"):
            st, dt = getattr(src, name), getattr(dst, name)
            if not np.array_equal(f[st], dt[f[:, None], f[None, :]]):
                found.append(f"{name} not preserved")
        return found

    def validate(self) -> "AlgebraEmbedding":
        found = self.problems()
        if found:
            raise InvalidEmbedding("; ".join(found))
        return self

    def compose(self, after: "AlgebraEmbedding") -> "AlgebraEmbedding":
        """``after ∘ self``."""
        if after.source is not self.target:
            raise InvalidEmbedding("embeddings do not compose")
        return AlgebraEmbedding(self.source, after.target, [after.map[y] for y in self.map])

    def is_onto(self) -> bool:
        return len(set(self.map)) == self.target.n


def identity_embedding(A: HeytingAlgebra) -> AlgebraEmbedding:
    return AlgebraEmbedding(A, A, range(A.n))


# ---------------------------------------------------------- subalgebras


def closure(A: HeytingAlgebra, generators: Iterable[int]) -> list[int]:
    """Sorted elements of the subuniverse generated by ``generators``."""
    meet, join, imp = A.meet.tolist(), A.join.tolist(), A.imp.tolist()
    have = {A.bot, A.top, *(int(g) for g in generators)}
    queue = sorted(have)
    done: list[int] = []
    while queue:
        x = queue.pop()
        done.append(x)
        for y in done:
            for z in (meet[x][y], join[x][y], imp[x][y], imp[y][x]):
                if z not in have:
                    have.add(z)
                    queue.append(z)
    return sorted(have)


def restrict(A: HeytingAlgebra, elements: Sequence[int]) -> tuple[HeytingAlgebra, AlgebraEmbedding]:
    """The subalgebra on a closed subset, with its inclusion map."""
    elements = list(elements)
    position = {x: i for i, x in enumerate(elements)}
    idx = np.array(elements)
    remap = np.vectorize(position.__getitem__, otypes=[np.int64])

    def sub(table):
        return remap(table[idx[:, None], idx[None, :]])

    carrier = None if A.carrier is None else [A.carrier[x] for x in elements]
    B = HeytingAlgebra(
        [A.labels[x] for x in elements],
        A.leq[idx[:, None], idx[None, :]],
        sub(A.meet),
        sub(A.join),
        sub(A.imp),
        carrier=carrier,
    )
    return B, AlgebraEmbedding(B, A, elements)


def subalgebra_generated(A: HeytingAlgebra, S: Iterable[int]) -> tuple[HeytingAlgebra, AlgebraEmbedding]:
    """Smallest subalgebra containing ``S`` together with its inclusion."""
    return restrict(A, closure(A, [A.index(s) for s in S]))


def subalgebras(A: HeytingAlgebra, max_generators: int = 2) -> list[tuple[HeytingAlgebra, AlgebraEmbedding]]:
    """Distinct subalgebras generated by at most ``max_generators`` elements,
    smallest first, each with its inclusion."""
    seen = {}
    for size in range(max_generators + 1):
        for combo in itertools.combinations(range(A.n), size):
            elements = tuple(closure(A, combo))
            seen.setdefault(elements, None)
    return [restrict(A, list(e)) for e in sorted(seen, key=lambda e: (len(e), e))]


def minimal_generating_set(A: HeytingAlgebra) -> tuple[int, ...]:
    """A smallest set of elements generating A (first in index order)."""
    inner = [x for x in range(A.n) if x not in (A.bot, A.top)]
    for size in range(len(inner) + 1):
        for combo in itertools.combinations(inner, size):
            if len(closure(A, combo)) == A.n:
                return combo
    return tuple(inner)


def pre_top(A: HeytingAlgebra):
    """The unique coatom below which every non-top element lies, if any."""
    others = [x for x in range(A.n) if x != A.top]
    for w in others:
        if all(A.leq[x, w] for x in others):
            return w
    return None


# ---------------------------------------------------------- isomorphism


def _heights(A: HeytingAlgebra) -> list[int]:
    order = sorted(range(A.n), key=lambda x: int(A.leq[:, x].sum()))
    height = [0] * A.n
    for x in order:
        below = [y for y in range(A.n) if y != x and A.leq[y, x]]
        height[x] = 1 + max((height[y] for y in below), default=-1)
    return height


def _signatures(A: HeytingAlgebra) -> list[tuple]:
    height = _heights(A)
    n_below = A.leq.sum(axis=0)
    n_above = A.leq.sum(axis=1)
    return [(height[x], int(n_below[x]), int(n_above[x])) for x in range(A.n)]


def find_isomorphism(A: HeytingAlgebra, B: HeytingAlgebra):
    """An order isomorphism ``A -> B`` as a tuple, or None.

    Lattice isomorphisms between Heyting algebras preserve every operation,
    so matching the order is enough.  Candidates are pruned by a height and
    up/down-degree signature and tried in index order.
    """
    if A.n != B.n:
        return None
    sa, sb = _signatures(A), _signatures(B)
    if sorted(sa) != sorted(sb):
        return None
    order = sorted(range(A.n), key=lambda x: (sa[x], x))
    candidates = {x: [y for y in range(B.n) if sb[y] == sa[x]] for x in order}
    la, lb = A.leq, B.leq
    mapping: dict[int, int] = {}
    used = [False] * B.n

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        for y in candidates[x]:
            if used[y]:
                continue
            if all(la[u, x] == lb[v, y] and la[x, u] == lb[y, v] for u, v in mapping.items()):
                mapping[x] = y
                used[y] = True
                if extend(k + 1):
                    return True
                del mapping[x]
                used[y] = False
        return False

    if not extend(0):
        return None
    return tuple(mapping[x] for x in range(A.n))
