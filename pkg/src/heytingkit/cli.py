"""Command-line front end.

Exit codes: 0 success, 1 a logical finding (a failed check, a separating
identity, an invalid derivation), 2 a search budget was exceeded, 3 bad input.
Every command can print JSON (``--json``) carrying the same data as the text
report. Output contains no timestamps, so a rerun is byte-identical.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .calculus import purification_trace
from .core import HeytingAlgebra, parse_algebra
from .enrichment import EPair, box_operator, check_tilde, e_pairs, enrichment, tilde_from_pair
from .errors import (
    BudgetExceeded, FormatError, FormulaSyntaxError, HeytingError, NoRelativePseudoComplement, NotALattice,
    NotAPartialOrder, NotDistributive,
)
from .filters import prime_filters
from .formula import big_conj, parse_formula, to_text
from .hilbert import Calculus, Derivation, check_derivation, format_derivation, parse_derivation
from .stone import ALL, delta_algebra, delta_h_bits, stone_embed
from .suite import run_suite
from .variety import separating_identity, variety_contains

EXIT_OK, EXIT_FINDING, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3

INPUT_ERRORS = (OSError, FormatError, FormulaSyntaxError, NotAPartialOrder, NotALattice, NotDistributive,
                NoRelativePseudoComplement, KeyError)


class Output:
    """Collects a report as text lines and as a JSON payload."""

    def __init__(self, command: str, as_json: bool):
        self.command = command
        self.as_json = as_json
        self.lines: list[str] = []
        self.data: dict = {"command": command}

    def line(self, text: str = "") -> None:
        self.lines.append(text)

    def emit(self, stream, quiet: bool) -> None:
        if self.as_json:
            stream.write(json.dumps(self.data, indent=2, ensure_ascii=False) + "\n")
            return
        if not quiet:
            stream.write(f"heytingkit {__version__}: {self.command}\n")
        stream.write("\n".join(self.lines) + ("\n" if self.lines else ""))


def load_algebra(path: str | Path) -> HeytingAlgebra:
    return parse_algebra(Path(path).read_text())


def load_derivation(path: str | Path, premises: list[str] | None = None) -> Derivation:
    """Premises given on the command line replace the file's and are folded by ∧."""
    D = parse_derivation(Path(path).read_text())
    if premises:
        D = Derivation(D.steps, big_conj(parse_formula(p) for p in premises))
    return D


def _set_text(A: HeytingAlgebra, elements) -> str:
    return "{" + ", ".join(A.labels[x] for x in elements) + "}"


def _points_text(S, bits: int) -> str:
    return "{" + ", ".join(f"F{i}" for i in S.points(bits)) + "}"


# ------------------------------------------------------------- subcommands


def cmd_prime_filters(args, out: Output) -> int:
    A = load_algebra(args.algebra)
    S = prime_filters(A)
    out.line(f"{len(S)} prime filters of a {A.n}-element algebra")
    rows = []
    for i, F in enumerate(S.filters):
        above = [f"F{j}" for j in S.points(S.strictly_above[i])]
        out.line(f"F{i} = {F}" + (f"  below {' '.join(above)}" if above else ""))
        rows.append({"point": i, "filter": F.labels(), "strictly_above": S.points(S.strictly_above[i])})
    out.data["filters"] = rows
    return EXIT_OK


def cmd_delta(args, out: Output) -> int:
    A = load_algebra(args.algebra)
    sd = stone_embed(A)
    S = sd.spectrum
    X = ALL if not args.set else [A.index(x) for x in args.set]
    D, _ = delta_algebra(A, X, sd=sd)
    out.line("spectrum:")
    for i, F in enumerate(S.filters):
        out.line(f"  F{i} = {F}")
    out.line(f"{'x':<8} {'h(x)':<24} delta h(x)")
    table = []
    for x in range(A.n):
        hx, dx = S.containing(x), delta_h_bits(sd, x)
        out.line(f"{A.labels[x]:<8} {_points_text(S, hx):<24} {_points_text(S, dx)}")
        table.append({"x": A.labels[x], "h": S.points(hx), "delta_h": S.points(dx)})
    chosen = "all" if X is ALL else _set_text(A, X)
    out.line(f"|delta[A_X]| = {D.n} for X = {chosen}")
    out.data.update(spectrum=[F.labels() for F in S.filters], table=table,
                    X="all" if X is ALL else [A.labels[x] for x in X], size=D.n)
    return EXIT_OK


def cmd_enrich(args, out: Output) -> int:
    A = load_algebra(args.algebra)
    out.line(f"{'a':<8} a*")
    stars = {}
    for a in range(A.n):
        b = enrichment(A, a)
        stars[A.labels[a]] = None if b is None else A.labels[b]
        out.line(f"{A.labels[a]:<8} {'-' if b is None else A.labels[b]}")
    box = box_operator(A)
    out.line("box: " + ("none (some element is not enrichable)" if box is None
                        else " ".join(f"{A.labels[x]}->{A.labels[box[x]]}" for x in range(A.n))))
    if args.pair:
        pairs = [EPair(A, A.index(a), A.index(b)) for a, b in args.pair]
    else:
        pairs = e_pairs(A)
    tildes = []
    status = EXIT_OK
    for p in pairs:
        name = f"({A.labels[p.a]}, {A.labels[p.a_star]})"
        try:
            t = tilde_from_pair(p)
        except HeytingError as exc:
            out.line(f"tilde for {name}: {exc}")
            tildes.append({"pair": [A.labels[p.a], A.labels[p.a_star]], "error": str(exc)})
            status = EXIT_FINDING
            continue
        report = check_tilde(A, t.t)
        verdict = "ok" if report.ok else "fails " + ", ".join(report.failed())
        out.line(f"tilde for {name}: " + " ".join(f"{A.labels[x]}->{A.labels[t.t[x]]}" for x in range(A.n))
                 + f"  [{verdict}]")
        tildes.append({"pair": [A.labels[p.a], A.labels[p.a_star]], "table": [A.labels[v] for v in t.t],
                       "ok": report.ok})
        if not report.ok:
            status = EXIT_FINDING
    out.data.update(enrichment=stars, box=None if box is None else [A.labels[v] for v in box], tildes=tildes)
    return status


def cmd_verify(args, out: Output) -> int:
    A = load_algebra(args.algebra)
    report = run_suite(A, max_vars=args.vars, max_depth=args.depth)
    width = max(len(c.name) for c in report.checks)
    for c in report.checks:
        out.line(f"{c.name:<{width}}  {c.status:<7}  {c.detail}".rstrip())
    counts = {k: sum(c.status == k for c in report.checks) for k in ("pass", "fail", "skipped")}
    out.line(f"{counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped")
    out.data.update(checks=[{"name": c.name, "status": c.status, "detail": c.detail} for c in report.checks],
                    counts=counts)
    return EXIT_OK if report.ok else EXIT_FINDING


def cmd_compare(args, out: Output) -> int:
    A, B = load_algebra(args.first), load_algebra(args.second)
    out.data.update(vars=args.vars, depth=args.depth, seed=args.seed, exact=args.exact)
    term = separating_identity(A, B, args.vars, args.depth, seed=args.seed)
    if term is not None:
        out.line(f"separating identity: {to_text(term)}")
        out.data.update(verdict="separated", identity=to_text(term))
        return EXIT_FINDING
    if not args.exact:
        out.line(f"no separating identity with <= {args.vars} variables and depth <= {args.depth}")
        out.data["verdict"] = "indistinguishable within bounds"
        return EXIT_OK
    both = variety_contains(A, B) and variety_contains(B, A)
    if both:
        out.line("each algebra lies in the variety of the other: same variety")
        out.data["verdict"] = "same variety"
        return EXIT_OK
    out.line("no identity found within bounds, but the varieties differ")
    out.data["verdict"] = "different varieties"
    return EXIT_FINDING


def cmd_check(args, out: Output) -> int:
    D = load_derivation(args.derivation, args.premise)
    calculus = Calculus.parse(args.calculus)
    verdict = check_derivation(D, calculus, D.premise)
    out.data.update(calculus=calculus.value, steps=len(D), valid=verdict.valid,
                    premise=None if D.premise is None else to_text(D.premise),
                    diagnostics=[str(d) for d in verdict.diagnostics])
    if verdict.valid:
        out.line(f"valid {calculus.value} derivation of {to_text(D.conclusion)} in {len(D)} steps")
        return EXIT_OK
    out.line(f"invalid {calculus.value} derivation")
    for d in verdict.diagnostics:
        out.line(f"  {d}")
    return EXIT_FINDING


def cmd_purify(args, out: Output) -> int:
    D = load_derivation(args.derivation, args.premise)
    stages = purification_trace(D, D.premise)
    pure = stages[-1].derivation
    # purify() repeats the final Int_τ check; the trace already verified every stage
    check = check_derivation(pure, Calculus.INT_TAU, pure.premise)
    for s in stages:
        replaced = "" if s.replaced is None else f"  replace {to_text(s.replaced)}"
        out.line(f"rank {s.rank}  {len(s.derivation)} steps{replaced}")
    text = format_derivation(pure)
    if args.out:
        Path(args.out).write_text(text)
        out.line(f"wrote {len(pure)} steps to {args.out}")
    else:
        out.line(text.rstrip("\n"))
    out.data.update(ranks=[str(s.rank) for s in stages], steps=len(pure), valid=check.valid,
                    conclusion=to_text(pure.conclusion), derivation=text if not args.out else None)
    return EXIT_OK if check.valid and pure.conclusion is D.conclusion else EXIT_FINDING


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    def options(defaults: bool) -> argparse.ArgumentParser:
        # subcommands must not reset options already given before the subcommand name
        common = argparse.ArgumentParser(add_help=False)
        kw = {} if defaults else {"default": argparse.SUPPRESS}
        common.add_argument("--json", action="store_true", help="print the report as JSON", **kw)
        common.add_argument("--quiet", action="store_true", help="suppress the banner line", **kw)
        common.add_argument("--seed", type=int, help="seed for sampled searches (default 0)",
                            **(kw or {"default": 0}))
        return common

    common = options(defaults=False)
    parser = argparse.ArgumentParser(prog="heytingkit", description="Finite Heyting algebra toolkit.",
                                     parents=[options(defaults=True)])
    parser.add_argument("--version", action="version", version=f"heytingkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prime-filters", parents=[common], help="list the spectrum of an algebra")
    p.add_argument("algebra")
    p.set_defaults(run=cmd_prime_filters)

    p = sub.add_parser("delta", parents=[common], help="h and delta h tables and the size of delta[A_X]")
    p.add_argument("algebra")
    p.add_argument("--set", nargs="+", metavar="X", help="elements of X (default: all)")
    p.set_defaults(run=cmd_delta)

    p = sub.add_parser("enrich", parents=[common], help="enrichments, box table and tilde tables")
    p.add_argument("algebra")
    p.add_argument("--pair", nargs=2, action="append", metavar=("A", "A_STAR"),
                   help="tilde table for this pair (repeatable; default: every E-pair)")
    p.set_defaults(run=cmd_enrich)

    p = sub.add_parser("verify", parents=[common], help="run the invariant suite on an algebra")
    p.add_argument("algebra")
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--depth", type=int, default=5)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("compare-varieties", parents=[common], help="search for an identity separating two algebras")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--depth", type=int, default=5)
    p.add_argument("--exact", action="store_true", help="decide equality of the varieties when no identity is found")
    p.set_defaults(run=cmd_compare)

    p = sub.add_parser("check", parents=[common], help="check a derivation file")
    p.add_argument("derivation")
    p.add_argument("--calculus", default="kmtau", choices=[c.value for c in Calculus])
    p.add_argument("--premise", action="append", metavar="F", help="premise formula (repeatable, folded by &)")
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("purify", parents=[common], help="turn a KM_tau derivation into an Int_tau one")
    p.add_argument("derivation")
    p.add_argument("--out", metavar="PATH", help="write the pure derivation here")
    p.add_argument("--premise", action="append", metavar="F", help="premise formula (repeatable, folded by &)")
    p.set_defaults(run=cmd_purify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.command, args.json)
    try:
        code = args.run(args, out)
    except BudgetExceeded as exc:
        return _fail(out, args, EXIT_BUDGET, f"budget exceeded: {exc}")
    except INPUT_ERRORS as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return _fail(out, args, EXIT_INPUT, f"input error: {type(exc).__name__}: {message}")
    except HeytingError as exc:
        detail = f"{type(exc).__name__}: {exc}"
        for d in getattr(exc, "diagnostics", None) or []:
            detail += f"\n  {d}"
        return _fail(out, args, EXIT_FINDING, detail)
    out.emit(sys.stdout, args.quiet)
    return code


def _fail(out: Output, args, code: int, message: str) -> int:
    if args.json:
        out.data["error"] = message
        out.emit(sys.stdout, args.quiet)
    else:
        sys.stderr.write(f"heytingkit {args.command}: {message}\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
