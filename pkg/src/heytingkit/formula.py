"""Propositional formulas: the shared syntax of terms and calculus formulas.

Formulas are hash-consed, so two structurally equal formulas are the same
Python object and equality is identity.  Connectives: ``&`` (and), ``|``
(or), ``->`` (implication), ``-`` (Heyting negation ¬) and ``~`` (the tilde
negation).  Atoms are variables ``p0, p1, ...``, the constant ``tau`` and the
lattice constants ``0`` and ``1``.
"""
from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import FormulaSyntaxError

VAR, TAU_OP, BOT_OP, TOP_OP = "var", "tau", "bot", "top"
NOT, TILDE, AND, OR, IMP = "not", "tilde", "and", "or", "imp"
UNARY = (NOT, TILDE)
BINARY = (AND, OR, IMP)


class Formula:
    __slots__ = ("op", "args", "_hash", "degree", "depth", "size")
    _interned: dict = {}

    def __new__(cls, op: str, args: tuple = ()):
        key = (op, args)
        found = cls._interned.get(key)
        if found is not None:
            return found
        f = object.__new__(cls)
        f.op = op
        f.args = args
        f._hash = hash(key)
        if op == VAR or not args:
            f.degree, f.depth, f.size = 0, 1, 1
        else:
            f.degree = (op == TILDE) + sum(a.degree for a in args)
            f.depth = 1 + max(a.depth for a in args)
            f.size = 1 + sum(a.size for a in args)
        cls._interned[key] = f
        return f

    def __hash__(self) -> int:
        return self._hash

    def __reduce__(self):
        return (Formula, (self.op, self.args))

    def __repr__(self) -> str:
        return f"Formula({to_text(self)!r})"

    def __str__(self) -> str:
        return to_text(self)

    def __lt__(self, other: "Formula") -> bool:
        return sort_key(self) < sort_key(other)

    @property
    def index(self) -> int:
        if self.op != VAR:
            raise AttributeError("only variables have an index")
        return self.args[0]

    @property
    def is_tilde_free(self) -> bool:
        return self.degree == 0


def var(i: int) -> Formula:
    return Formula(VAR, (int(i),))


TAU = Formula(TAU_OP)
BOT = Formula(BOT_OP)
TOP = Formula(TOP_OP)


def neg(a: Formula) -> Formula:
    return Formula(NOT, (a,))


def tilde(a: Formula) -> Formula:
    return Formula(TILDE, (a,))


def conj(a: Formula, b: Formula) -> Formula:
    return Formula(AND, (a, b))


def disj(a: Formula, b: Formula) -> Formula:
    return Formula(OR, (a, b))


def imp(a: Formula, b: Formula) -> Formula:
    return Formula(IMP, (a, b))


def iff(a: Formula, b: Formula) -> Formula:
    """The abbreviation (a -> b) & (b -> a)."""
    return conj(imp(a, b), imp(b, a))


def big_conj(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; an empty list gives :data:`TRUTH`."""
    parts = list(parts)
    if not parts:
        return TRUTH
    out = parts[0]
    for p in parts[1:]:
        out = conj(out, p)
    return out


P0, P1, P2 = var(0), var(1), var(2)
TRUTH = imp(P0, P0)  # the calculus' verum


def sort_key(f: Formula) -> tuple:
    return (f.depth, f.size, to_text(f))


# --------------------------------------------------------------- traversal


def subformulas(f: Formula) -> Iterator[Formula]:
    """Pre-order, left to right, with repetitions."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if g.op != VAR:
            stack.extend(reversed(g.args))


def contains(f: Formula, g: Formula) -> bool:
    if g.size > f.size:
        return False
    return any(h is g for h in subformulas(f))


def variables(f: Formula) -> set[int]:
    return {g.args[0] for g in subformulas(f) if g.op == VAR}


def replace(alpha: Formula, beta: Formula, gamma: Formula) -> Formula:
    """alpha[beta : gamma]: every occurrence of beta replaced by gamma."""
    memo: dict[Formula, Formula] = {}

    def go(f: Formula) -> Formula:
        if f is beta:
            return gamma
        if f.op == VAR or not f.args or f.size < beta.size:
            return f
        out = memo.get(f)
        if out is None:
            out = Formula(f.op, tuple(go(a) for a in f.args))
            memo[f] = out
        return out

    return go(alpha)


def substitute(f: Formula, mapping: Mapping[int, Formula]) -> Formula:
    """Simultaneous substitution of variables by formulas."""
    memo: dict[Formula, Formula] = {}

    def go(g: Formula) -> Formula:
        if g.op == VAR:
            return mapping.get(g.args[0], g)
        if not g.args:
            return g
        out = memo.get(g)
        if out is None:
            out = Formula(g.op, tuple(go(a) for a in g.args))
            memo[g] = out
        return out

    return go(f)


def maximal_tilde(formulas: Iterable[Formula]) -> list[Formula]:
    """M(S): the ~-subformulas not in the scope of another ~, in order of
    first (leftmost, earliest) occurrence."""
    seen: dict[Formula, None] = {}
    for f in formulas:
        if f.degree == 0:
            continue
        stack = [f]
        while stack:
            g = stack.pop()
            if g.degree == 0:
                continue
            if g.op == TILDE:
                seen.setdefault(g, None)
            else:
                stack.extend(reversed(g.args))
    return list(seen)


# ------------------------------------------------------------------ printing

_PREC = {IMP: 1, OR: 2, AND: 3, NOT: 4, TILDE: 4}
_SYMBOL = {AND: "&", OR: "|", IMP: "->", NOT: "-", TILDE: "~"}


def _prec(f: Formula) -> int:
    return _PREC.get(f.op, 5)


def to_text(f: Formula) -> str:
    memo: dict[Formula, str] = {}

    def go(g: Formula) -> str:
        out = memo.get(g)
        if out is not None:
            return out
        if g.op == VAR:
            out = f"p{g.args[0]}"
        elif g.op == TAU_OP:
            out = "tau"
        elif g.op == BOT_OP:
            out = "0"
        elif g.op == TOP_OP:
            out = "1"
        elif g.op in UNARY:
            (a,) = g.args
            inner = go(a)
            out = _SYMBOL[g.op] + (f"({inner})" if _prec(a) < 4 else inner)
        else:
            a, b = g.args
            left, right = go(a), go(b)
            # keep the tree explicit: parenthesize binary children unless the
            # grammar's associativity makes them unambiguous
            if _prec(a) < 4 and not (a.op == g.op and g.op != IMP):
                left = f"({left})"
            if _prec(b) < 4 and not (b.op == g.op == IMP):
                right = f"({right})"
            out = f"{left} {_SYMBOL[g.op]} {right}"
        memo[g] = out
        return out

    return go(f)


# ------------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(p\d+)|(tau)|(<->)|(->)|([&|~\-()01]))")


def _tokens(text: str) -> list[tuple[str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            skip = len(text[pos:]) - len(text[pos:].lstrip())
            raise FormulaSyntaxError(f"unexpected character {text[pos + skip]!r}", pos + skip)
        tok = next(g for g in m.groups() if g is not None)
        out.append((tok, m.start(m.lastindex)))
        pos = m.end()
    out.append(("<end>", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def take(self, expected: str | None = None) -> str:
        tok, pos = self.toks[self.i]
        if expected is not None and tok != expected:
            raise FormulaSyntaxError(f"expected {expected!r}, found {tok!r}", pos)
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.implication()
        if self.peek() == "<->":
            self.take()
            return iff(left, self.formula())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek() == "->":
            self.take()
            return imp(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        out = self.conjunction()
        while self.peek() == "|":
            self.take()
            out = disj(out, self.conjunction())
        return out

    def conjunction(self) -> Formula:
        out = self.unary()
        while self.peek() == "&":
            self.take()
            out = conj(out, self.unary())
        return out

    def unary(self) -> Formula:
        tok = self.peek()
        if tok == "~":
            self.take()
            return tilde(self.unary())
        if tok == "-":
            self.take()
            return neg(self.unary())
        return self.atom()

    def atom(self) -> Formula:
        tok, pos = self.toks[self.i]
        if tok == "(":
            self.take()
            inner = self.formula()
            self.take(")")
            return inner
        self.i += 1
        if tok.startswith("p") and tok[1:].isdigit():
            return var(int(tok[1:]))
        if tok == "tau":
            return TAU
        if tok == "0":
            return BOT
        if tok == "1":
            return TOP
        raise FormulaSyntaxError(f"unexpected token {tok!r}", pos)


def parse_formula(text: str) -> Formula:
    """Parse the textual syntax produced by :func:`to_text`."""
    p = _Parser(text)
    out = p.formula()
    tok, pos = p.toks[p.i]
    if tok != "<end>":
        raise FormulaSyntaxError(f"trailing input {tok!r}", pos)
    return out
