"""Term evaluation, identity search, variety membership, and the checks
relating an algebra to its δ-subalgebras."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import AlgebraEmbedding, HeytingAlgebra, find_isomorphism, minimal_generating_set
from .enrichment import EPair, TauExpansion, check_packing, enriches, tilde_from_pair
from .errors import BudgetExceeded, MissingInterpretation, NotEPair, NotPacked, UnboundVariable
from .filters import pair_spectrum_maps, special_filters
from .formula import (
    AND, BOT, BOT_OP, IMP, NOT, OR, TAU_OP, TILDE, TOP, TOP_OP, VAR,
    Formula, conj, disj, imp, neg, sort_key, var, variables,
)
from .stone import delta_algebra, delta_h_bits, stone_embed

Term = Formula


@dataclass(frozen=True, eq=False)
class Valuation:
    algebra: HeytingAlgebra
    assignment: tuple
    tau: int | None = None
    tilde: Sequence[int] | None = None


def _tilde_table(tilde):
    if tilde is None:
        return None
    return np.asarray(getattr(tilde, "t", tilde), dtype=np.int64)


def evaluate(term: Term, valuation: Valuation) -> int:
    """Value of ``term`` in the algebra under the valuation."""
    A = valuation.algebra
    values = [A.index(v) for v in valuation.assignment]
    tilde = _tilde_table(valuation.tilde)
    memo: dict[Formula, int] = {}

    def go(f: Formula) -> int:
        out = memo.get(f)
        if out is not None:
            return out
        op = f.op
        if op == VAR:
            i = f.args[0]
            if i >= len(values):
                raise UnboundVariable(f"p{i} has no value")
            out = values[i]
        elif op == TAU_OP:
            if valuation.tau is None:
                raise MissingInterpretation("tau is not interpreted")
            out = int(valuation.tau)
        elif op == BOT_OP:
            out = A.bot
        elif op == TOP_OP:
            out = A.top
        elif op == NOT:
            out = int(A.neg[go(f.args[0])])
        elif op == TILDE:
            if tilde is None:
                raise MissingInterpretation("~ is not interpreted")
            out = int(tilde[go(f.args[0])])
        else:
            x, y = go(f.args[0]), go(f.args[1])
            table = A.meet if op == AND else A.join if op == OR else A.imp
            out = int(table[x, y])
        memo[f] = out
        return out

    return go(term)


def term_table(term: Term, A: HeytingAlgebra, nvars: int, tau=None, tilde=None) -> np.ndarray:
    """Values of ``term`` under all assignments of ``nvars`` variables, in
    lexicographic assignment order."""
    tilde_t = _tilde_table(tilde)
    size = A.n ** nvars
    grid = np.indices((A.n,) * nvars).reshape(nvars, size) if nvars else np.zeros((0, 1), dtype=np.int64)
    memo: dict[Formula, np.ndarray] = {}

    def go(f: Formula) -> np.ndarray:
        out = memo.get(f)
        if out is not None:
            return out
        op = f.op
        if op == VAR:
            if f.args[0] >= nvars:
                raise UnboundVariable(f"p{f.args[0]} has no value")
            out = grid[f.args[0]]
        elif op == TAU_OP:
            if tau is None:
                raise MissingInterpretation("tau is not interpreted")
            out = np.full(size, int(tau))
        elif op == BOT_OP:
            out = np.full(size, A.bot)
        elif op == TOP_OP:
            out = np.full(size, A.top)
        elif op == NOT:
            out = A.neg[go(f.args[0])]
        elif op == TILDE:
            if tilde_t is None:
                raise MissingInterpretation("~ is not interpreted")
            out = tilde_t[go(f.args[0])]
        else:
            table = A.meet if op == AND else A.join if op == OR else A.imp
            out = table[go(f.args[0]), go(f.args[1])]
        memo[f] = out
        return out

    return go(term)


def counterexample(A: HeytingAlgebra, term: Term, tau=None, tilde=None):
    """Lexicographically least assignment where ``term`` is not 1, or None."""
    nvars = max(variables(term), default=-1) + 1
    values = term_table(term, A, nvars, tau, tilde)
    bad = np.flatnonzero(values != A.top)
    if bad.size == 0:
        return None
    return tuple(int(v) for v in np.unravel_index(bad[0], (A.n,) * nvars)) if nvars else ()


def holds_in(A: HeytingAlgebra, term: Term, tau=None, tilde=None) -> bool:
    return counterexample(A, term, tau, tilde) is None


def holds_in_expansion(E: TauExpansion, term: Term) -> bool:
    return holds_in(E.algebra, term, E.tau, E.tilde)


# ----------------------------------------------------------- identity search

DEFAULT_SEARCH_WORK = 400_000_000


class _Search:
    """Joint term functions over A^k and B^k, deduplicated by value vector.

    Two terms with the same values on every assignment in both algebras are
    interchangeable as subterms, so one representative per vector suffices.
    Vectors are compared through two independent random 64-bit linear hashes.
    """

    def __init__(self, A: HeytingAlgebra, B: HeytingAlgebra, k: int, seed: int = 0):
        off = A.n
        n = A.n + B.n
        self.topA, self.topB = A.top, B.top + off

        def table(ta, tb):
            out = np.zeros((n, n), dtype=np.uint8)
            out[:off, :off] = ta
            out[off:, off:] = tb + off
            return out

        self.tables = {AND: table(A.meet, B.meet), OR: table(A.join, B.join), IMP: table(A.imp, B.imp)}
        self.negation = np.concatenate([A.neg, B.neg + off]).astype(np.uint8)
        gridA = np.indices((A.n,) * k).reshape(k, -1)
        gridB = np.indices((B.n,) * k).reshape(k, -1) + off
        self.dA = A.n ** k
        self.width = A.n ** k + B.n ** k
        rng = np.random.default_rng(seed)
        self.weights = rng.integers(1, 2**63, size=(self.width, 2), dtype=np.uint64) | np.uint64(1)
        const = lambda a, b: np.concatenate([np.full(self.dA, a), np.full(B.n ** k, b)])
        leaves = [(var(i), np.concatenate([gridA[i], gridB[i]])) for i in range(k)]
        leaves += [(BOT, const(A.bot, B.bot + off)), (TOP, const(A.top, B.top + off))]
        self.terms: list[Formula] = []
        self.rows = np.zeros((0, self.width), dtype=np.uint8)
        self.known: set = set()
        self.add([t for t, _ in leaves], np.array([v for _, v in leaves], dtype=np.uint8))

    def keys(self, rows: np.ndarray) -> list[tuple[int, int]]:
        h = rows.astype(np.uint64) @ self.weights
        return list(map(tuple, h.tolist()))

    def add(self, terms, rows: np.ndarray) -> list[int]:
        """Store the rows not seen before; returns their store indices."""
        keep = []
        for i, key in enumerate(self.keys(rows)):
            if key not in self.known:
                self.known.add(key)
                keep.append(i)
        start = len(self.terms)
        self.terms += [terms[i] if not callable(terms) else terms(i) for i in keep]
        if keep:
            self.rows = np.concatenate([self.rows, rows[keep]])
        return list(range(start, len(self.terms)))

    def separating(self, rows: np.ndarray) -> np.ndarray:
        holdsA = (rows[:, : self.dA] == self.topA).all(axis=1)
        holdsB = (rows[:, self.dA:] == self.topB).all(axis=1)
        return holdsA != holdsB


def enumerate_separating(A: HeytingAlgebra, B: HeytingAlgebra, max_vars: int = 3, max_depth: int = 5,
                         *, seed: int = 0, max_work: int = DEFAULT_SEARCH_WORK):
    """Brute-force term search over joint term functions, level by level.

    Leaves (variables and the constants 0, 1) have depth 1.  Returns the
    least separating term of the first level that has one, ordered by size
    then text.  Raises BudgetExceeded when a level would touch more than
    ``max_work`` table entries.
    """
    if max_depth < 1:
        return None
    s = _Search(A, B, max_vars, seed)
    hits = s.separating(s.rows)
    if hits.any():
        return min((s.terms[i] for i in np.flatnonzero(hits)), key=sort_key)
    levels = [list(range(len(s.terms)))]
    makers = {AND: conj, OR: disj, IMP: imp}
    for depth in range(2, max_depth + 1):
        last = levels[-1]
        older = [i for lvl in levels[:-1] for i in lvl]
        everything = older + last
        pairs = len(last) * len(everything) * 3
        work = (pairs + len(last)) * s.width
        if work > max_work:
            raise BudgetExceeded(
                f"term search at depth {depth} needs about {work} table lookups",
                attempted=work, budget=max_work,
            )
        store = depth < max_depth
        found: list[Formula] = []
        fresh: list[int] = []

        def batch(rows, describe):
            hits = s.separating(rows)
            if hits.any():
                found.extend(describe(i) for i in np.flatnonzero(hits))
            if store and not found:
                fresh.extend(s.add(describe, rows))

        batch(s.negation[s.rows[last]], lambda i: neg(s.terms[last[i]]))
        for op in (AND, OR, IMP):
            table, make = s.tables[op], makers[op]
            for i in last:
                partners = everything if op == IMP else older + [j for j in last if j >= i]
                batch(table[s.rows[i][None, :], s.rows[partners]],
                      lambda k, i=i, p=partners, make=make: make(s.terms[i], s.terms[p[k]]))
                if op == IMP and older:
                    batch(table[s.rows[older], s.rows[i][None, :]],
                          lambda k, i=i, make=make: make(s.terms[older[k]], s.terms[i]))
        if found:
            return min(found, key=sort_key)
        if store and not fresh:
            return None  # closed: deeper terms add no new functions
        levels.append(fresh)
    return None


def separating_identity(A: HeytingAlgebra, B: HeytingAlgebra, max_vars: int = 3, max_depth: int = 5,
                        *, seed: int = 0, max_work: int = DEFAULT_SEARCH_WORK):
    """A term holding in exactly one of A and B, or None if none exists
    within the bounds.

    Isomorphic algebras satisfy the same identities, so that case is
    answered exactly without enumeration; otherwise see
    :func:`enumerate_separating`.
    """
    if find_isomorphism(A, B) is not None:
        return None
    return enumerate_separating(A, B, max_vars, max_depth, seed=seed, max_work=max_work)


# ------------------------------------------------------------ HSP membership

DEFAULT_COORDINATE_BUDGET = 4096
DEFAULT_ELEMENT_BUDGET = 10_000


def variety_contains(B: HeytingAlgebra, A: HeytingAlgebra, *, budget: int = DEFAULT_COORDINATE_BUDGET,
                     max_elements: int = DEFAULT_ELEMENT_BUDGET) -> bool:
    """Is A in the variety generated by B?

    With g generators of A, the free algebra of Var(B) on g generators is the
    subalgebra of B^(B^g) generated by the projections.  A is a homomorphic
    image of it exactly when the subalgebra of (free algebra) × A generated
    by (projection_i, generator_i) is the graph of a function.
    """
    gens = minimal_generating_set(A)
    g = len(gens)
    coords = B.n ** g
    if coords > budget:
        raise BudgetExceeded(
            f"free algebra on {g} generators needs {coords} coordinates (budget {budget})",
            attempted=coords, budget=budget,
        )
    off = B.n
    n = B.n + A.n
    dtype = np.uint8 if n < 256 else np.uint16

    def table(tb, ta):
        out = np.zeros((n, n), dtype=dtype)
        out[:off, :off] = tb
        out[off:, off:] = ta + off
        return out

    tables = [table(B.meet, A.meet), table(B.join, A.join), table(B.imp, A.imp)]
    grid = np.indices((B.n,) * g).reshape(g, coords)
    seeds = [np.append(grid[i], off + gens[i]) for i in range(g)]
    seeds.append(np.append(np.full(coords, B.bot), off + A.bot))
    seeds.append(np.append(np.full(coords, B.top), off + A.top))
    rng = np.random.default_rng(0)
    weights = rng.integers(1, 2**63, size=(coords, 2), dtype=np.uint64) | np.uint64(1)
    value_of: dict = {}  # hash of the free-algebra part -> element of A
    rows = np.zeros((0, coords + 1), dtype=dtype)

    def absorb(batch: np.ndarray):
        """Add new rows; returns (new rows, consistent?)."""
        keys = list(map(tuple, (batch[:, :coords].astype(np.uint64) @ weights).tolist()))
        keep = []
        for i, key in enumerate(keys):
            value = int(batch[i, coords])
            seen = value_of.get(key)
            if seen is None:
                value_of[key] = value
                keep.append(i)
            elif seen != value:
                return None, False
        return batch[keep], True

    frontier, ok = absorb(np.array(seeds, dtype=dtype))
    if not ok:
        return False
    while len(frontier):
        rows = np.concatenate([rows, frontier])
        if len(rows) > max_elements:
            raise BudgetExceeded(
                f"free algebra has more than {max_elements} elements",
                attempted=len(rows), budget=max_elements,
            )
        found = []
        grown = len(rows)
        for x in frontier:
            batch = np.concatenate([t[x[None, :], rows] for t in tables] + [tables[2][rows, x[None, :]]])
            fresh, ok = absorb(batch)
            if not ok:
                return False
            if len(fresh):
                found.append(fresh)
                grown += len(fresh)
                if grown > max_elements:
                    raise BudgetExceeded(
                        f"free algebra has more than {max_elements} elements",
                        attempted=grown, budget=max_elements,
                    )
        frontier = np.concatenate(found) if found else rows[:0]
    return True


# ------------------------------------------------------------------ reports


@dataclass
class Check:
    name: str
    status: str  # "pass", "fail" or "skipped"
    detail: str = ""


@dataclass
class Report:
    checks: list = field(default_factory=list)

    def add(self, name: str, passed: bool | None, detail: str = "") -> None:
        status = "skipped" if passed is None else "pass" if passed else "fail"
        self.checks.append(Check(name, status, detail))

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if c.status == "fail"]

    def status(self, name: str) -> str:
        return next(c.status for c in self.checks if c.name == name)


def verify_main_theorem(A: HeytingAlgebra, max_vars: int = 3, max_depth: int = 5, *,
                        budget: int = DEFAULT_COORDINATE_BUDGET, pairs: bool = True) -> Report:
    """For every a: no identity separates A from δ[A_a], and (within budget)
    each lies in the variety of the other.  Also checks
    δ[A_{a,b}] ≅ δ[δ[A_a]_{h(b)}] for all pairs a < b."""
    report = Report()
    sd = stone_embed(A)
    base, _ = delta_algebra(A, [], sd=sd)
    report.add("delta-empty-is-image", find_isomorphism(A, base) is not None)
    cache = {}
    for a in range(A.n):
        label = A.labels[a]
        D, h = delta_algebra(A, [a], sd=sd)
        cache[a] = (D, h)
        try:
            sep = separating_identity(A, D, max_vars, max_depth)
            report.add(f"no-separating-identity[{label}]", sep is None, "" if sep is None else str(sep))
        except BudgetExceeded as exc:
            report.add(f"no-separating-identity[{label}]", None, str(exc))
        for name, outer, inner in (("A-in-Var(delta)", D, A), ("delta-in-Var(A)", A, D)):
            try:
                report.add(f"{name}[{label}]", variety_contains(outer, inner, budget=budget))
            except BudgetExceeded as exc:
                report.add(f"{name}[{label}]", None, str(exc))
    if pairs:
        for a, b in itertools.combinations(range(A.n), 2):
            both, _ = delta_algebra(A, [a, b], sd=sd)
            D, h = cache[a]
            stepwise, _ = delta_algebra(D, [h.map[b]])
            ok = find_isomorphism(both, stepwise) is not None
            report.add(f"two-step[{A.labels[a]},{A.labels[b]}]", ok)
    return report


def verify_conjecture(e: AlgebraEmbedding, a, a_star) -> Report:
    """Check that B ≅ δ[A_a] for a packed configuration A ≼ B with E-pair
    (e(a), a_star) in B, following the chain of identities of the argument.

    Each step is recorded; a failed step does not stop later ones.
    """
    A, B = e.source, e.target
    a, a_star = A.index(a), B.index(a_star)
    ea = e.map[a]
    if not enriches(B, ea, a_star):
        raise NotEPair(f"({B.labels[ea]}, {B.labels[a_star]}) is not an E-pair in the outer algebra")
    inner = TauExpansion(A, a)
    outer = TauExpansion(B, ea, tilde_from_pair(EPair(B, ea, a_star)))
    if not check_packing(inner, outer, e):
        raise NotPacked("the outer τ~-expansion is not generated by the inner algebra")
    report = Report()
    maps = pair_spectrum_maps(e)
    sdA, sdB = stone_embed(A), stone_embed(B)
    SB = sdB.spectrum
    delta_a = delta_h_bits(sdA, a)
    pulled = maps.phi_inv(delta_a)
    h_star = SB.containing(a_star)
    report.add("h_B(a*) within phi_inv(delta h_A(a))", h_star & ~pulled == 0)
    _, f_a = special_filters(A, a)
    meet_bits = SB.full
    for x in f_a.elements():
        meet_bits &= SB.containing(e.map[x])
    report.add("phi_inv(delta h_A(a)) below meet of h_B(F_a)", pulled & ~meet_bits == 0)
    report.add("meet of h_B(F_a) equals h_B(a*)", meet_bits == h_star,
               f"{SB.describe(meet_bits)} vs {SB.describe(h_star)}")
    report.add("phi_inv(delta h_A(a)) equals h_B(a*)", pulled == h_star)
    D, h = delta_algebra(A, [a], sd=sdA)
    where_b = {bits: i for i, bits in enumerate(SB.containing(y) for y in range(B.n))}
    psi = [where_b.get(maps.phi_inv(bits)) for bits in D.carrier]
    is_iso = None not in psi and AlgebraEmbedding(D, B, psi).problems() == [] and len(set(psi)) == B.n
    report.add("induced map delta[A_a] -> B is an isomorphism", is_iso,
               f"|delta[A_a]| = {D.n}, |B| = {B.n}")
    report.add("find_isomorphism(B, delta[A_a])", find_isomorphism(B, D) is not None)
    return report
