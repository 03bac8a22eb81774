"""The per-algebra invariant suite behind ``heytingkit verify``.

Each row is keyed by the name of the property it checks; a row is "pass",
"fail" or "skipped" (a budget was exceeded).
"""
from __future__ import annotations

import numpy as np

from .calculus import completeness_spot_check, proper_identities, sound_in
from .core import HeytingAlgebra, find_isomorphism, identity_embedding, pre_top
from .corpus import corpus
from .enrichment import (
    TauExpansion, box_operator, canonical_packing, check_packing, check_tilde, e_pairs, enriches, enrichment,
    km_conditions, pair_from_tilde, tilde_from_pair,
)
from .errors import HeytingError
from .filters import all_filters, excluding_masks, is_filter, prime_filters, special_filters
from .stone import delta_algebra, delta_h_bits, stone_embed, tower
from .variety import Report, verify_conjecture, verify_main_theorem


def _guard(report: Report, name: str, check) -> None:
    try:
        report.add(name, bool(check()))
    except HeytingError as exc:
        report.add(name, False, f"{type(exc).__name__}: {exc}")


def check_lattice(A: HeytingAlgebra, report: Report) -> None:
    x, y, z = np.ix_(range(A.n), range(A.n), range(A.n))

    def residuation():
        return (A.leq[z, A.imp[x, y]] == A.leq[A.meet[z, x], y]).all()

    def implication_identities():
        xs = np.arange(A.n)
        return ((A.imp[xs, xs] == A.top).all() and (A.imp[A.top, xs] == xs).all()
                and ((A.imp == A.top) == A.leq).all())

    _guard(report, "residuation", residuation)
    _guard(report, "implication-identities", implication_identities)
    _guard(report, "distributive", lambda: (A.meet[x, A.join[y, z]] == A.join[A.meet[x, y], A.meet[x, z]]).all())


def check_filters(A: HeytingAlgebra, report: Report) -> None:
    S = prime_filters(A)

    def three_way():
        for a in range(A.n):
            x_a, f_a = special_filters(A, a)
            if f_a.members != x_a.members & A.up[a]:
                return False
            if not (is_filter(A, x_a.members) and is_filter(A, f_a.members)):
                return False
        return True

    def dense():
        if A.n == 1:
            return True
        return all(A.neg[y] == A.bot for a in range(A.n) for y in special_filters(A, a)[1].elements())

    def max_criterion():
        for a in range(A.n):
            excluded, top = excluding_masks(S, a)
            f_a = special_filters(A, a)[1].members
            for i in S.points(excluded):
                if bool(top >> i & 1) != (f_a & ~S.members[i] == 0):
                    return False
        return True

    _guard(report, "F_a-characterizations", three_way)
    _guard(report, "F_a-dense", dense)
    _guard(report, "max-filter-criterion", max_criterion)
    _guard(report, "filters-principal", lambda: len(all_filters(A)) == A.n)


def check_stone(A: HeytingAlgebra, report: Report, max_steps: int = 3) -> None:
    sd = stone_embed(A)
    S = sd.spectrum
    up = sd.upset_algebra

    def h_embedding():
        h = sd.h.map
        return all(A.leq[x, y] == up.leq[h[x], h[y]] for x in range(A.n) for y in range(A.n)) and not sd.h.problems()

    def delta_pairs():
        for x in range(A.n):
            star = up.carrier.index(delta_h_bits(sd, x))
            if not enriches(up, sd.h.map[x], star):
                return False
        return True

    def e_pair_gives_delta():
        return all(delta_h_bits(sd, p.a) == S.containing(p.a_star) for p in e_pairs(A))

    def pre_top_kept():
        return pre_top(A) is None or pre_top(delta_algebra(A, sd=sd)[0]) is not None

    T = tower(A, max_steps)
    _guard(report, "h-embedding", h_embedding)
    _guard(report, "h-onto-Up(S)", lambda: sd.is_onto)
    # delta_h_bits raises unless δh(x) = h(x) ∪ max h̄(x)
    _guard(report, "delta-h-identity", lambda: all(delta_h_bits(sd, x) >= 0 for x in range(A.n)))
    _guard(report, "h-x-enriched-by-delta-h", delta_pairs)
    _guard(report, "E-pair-gives-delta-h", e_pair_gives_delta)
    _guard(report, "delta-A-isomorphic", lambda: find_isomorphism(A, delta_algebra(A, sd=sd)[0]) is not None)
    _guard(report, "tower-stabilizes-at-0", lambda: T.stabilized and T.stable_at == 0)
    _guard(report, "pre-top-preserved", pre_top_kept)


def check_enrichment(A: HeytingAlgebra, report: Report) -> None:
    pairs = e_pairs(A)

    def unique():
        return all(sum(1 for p in pairs if p.a == a) == 1 for a in range(A.n))

    def meet_of_f_a():
        return all(A.meet_all(special_filters(A, a)[1].elements()) == enrichment(A, a) for a in range(A.n))

    def box():
        b = box_operator(A)
        return b is not None and km_conditions(A, b)

    def tilde_all():
        return all(check_tilde(A, tilde_from_pair(p).t).ok for p in pairs)

    def round_trip():
        for p in pairs:
            t = tilde_from_pair(p)
            back = pair_from_tilde(t)
            if (back.a, back.a_star) != (p.a, p.a_star) or tilde_from_pair(back).t != t.t:
                return False
        return True

    def determined_by_top():
        tables = {tilde_from_pair(p).t for p in pairs}
        return len({t[A.top] for t in tables}) == len(tables)

    def packing():
        for a in range(A.n):
            inner, outer, h = canonical_packing(A, a)
            if not check_packing(inner, outer, h):
                return False
        return True

    _guard(report, "enrichable-unique", unique)
    _guard(report, "enrichment-dense", lambda: all(A.neg[p.a_star] == A.bot for p in pairs) or A.n == 1)
    _guard(report, "enrichment-is-meet-F_a", meet_of_f_a)
    _guard(report, "box-KM-conditions", box)
    _guard(report, "tilde-properties", tilde_all)
    _guard(report, "tilde-round-trip", round_trip)
    _guard(report, "tilde-determined-by-top", determined_by_top)
    _guard(report, "canonical-packing", packing)


def check_calculus(A: HeytingAlgebra, report: Report) -> None:
    expansions = [TauExpansion(A, p.a, tilde_from_pair(p)) for p in e_pairs(A)]
    entries = corpus()
    _guard(report, "proper-identities-hold",
           lambda: all(all(proper_identities(A, E.tau, E.tilde).values()) for E in expansions))
    _guard(report, "completeness-spot-check", lambda: all(c.ok for c in completeness_spot_check(A)))
    _guard(report, "corpus-sound", lambda: all(sound_in(e.derivation, E) for E in expansions for e in entries))


def check_variety(A: HeytingAlgebra, report: Report, max_vars: int = 3, max_depth: int = 5) -> None:
    main = verify_main_theorem(A, max_vars, max_depth)
    groups: dict[str, list[str]] = {}
    for c in main.checks:
        groups.setdefault(c.name.split("[")[0], []).append(c.status)
    for name, statuses in groups.items():
        status = "fail" if "fail" in statuses else "skipped" if "skipped" in statuses else "pass"
        report.add(f"main-theorem:{name}", None if status == "skipped" else status == "pass",
                   ", ".join(f"{statuses.count(k)} {k}" for k in ("pass", "fail", "skipped") if k in statuses))

    def self_conjecture():
        e = identity_embedding(A)
        return all(verify_conjecture(e, a, enrichment(A, a)).ok for a in range(A.n))

    _guard(report, "conjecture-at-identity", self_conjecture)


def run_suite(A: HeytingAlgebra, *, max_vars: int = 3, max_depth: int = 5) -> Report:
    report = Report()
    check_lattice(A, report)
    check_filters(A, report)
    check_stone(A, report)
    check_enrichment(A, report)
    check_variety(A, report, max_vars, max_depth)
    check_calculus(A, report)
    return report
