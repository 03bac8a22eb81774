import pytest

from heytingkit.errors import FormulaSyntaxError
from heytingkit.formula import (
    BOT, P0, P1, TAU, TOP, TRUTH, conj, contains, disj, iff, imp, maximal_tilde, neg, parse_formula, replace,
    substitute, subformulas, tilde, to_text, variables,
)


def test_parse_examples():
    assert parse_formula("p0 -> p0") is TRUTH
    assert parse_formula("~tau -> (p0 | (p0 -> tau))") is imp(tilde(TAU), disj(P0, imp(P0, TAU)))
    assert parse_formula("~~p0").degree == 2


def test_precedence_and_associativity():
    assert parse_formula("p0 -> p1 -> p0") is imp(P0, imp(P1, P0))
    assert parse_formula("p0 & p1 | p0") is disj(conj(P0, P1), P0)
    assert parse_formula("-p0 & ~p1") is conj(neg(P0), tilde(P1))
    assert parse_formula("p0 <-> p1") is iff(P0, P1)
    assert parse_formula("0 | 1") is disj(BOT, TOP)


@pytest.mark.parametrize("text", ["p0 ->", "(p0", "p0 p1", "q", "p0 & & p1", ""])
def test_parse_errors(text):
    with pytest.raises(FormulaSyntaxError):
        parse_formula(text)


def test_parse_error_position():
    with pytest.raises(FormulaSyntaxError) as err:
        parse_formula("p0 & $")
    assert err.value.position == 5


def test_print_round_trip():
    for text in ["(p0 -> p1) -> p0", "p0 | (p1 & p2)", "-(p0 | p1)", "~(p0 -> tau) & ~tau", "(p0 | p1) | p2"]:
        f = parse_formula(text)
        assert parse_formula(to_text(f)) is f


def test_hash_consing():
    assert imp(P0, P1) is imp(P0, P1)
    assert tilde(P0) is not tilde(P1)


def test_structure():
    f = parse_formula("~(p0 -> ~p1) & p2")
    assert f.degree == 2
    assert variables(f) == {0, 1, 2}
    assert contains(f, tilde(P1))
    assert tilde(P1) in set(subformulas(f))


def test_maximal_tilde_examples():
    assert maximal_tilde([tilde(tilde(P0))]) == [tilde(tilde(P0))]
    assert set(maximal_tilde([imp(tilde(P0), tilde(tilde(P0)))])) == {tilde(P0), tilde(tilde(P0))}
    assert maximal_tilde([imp(P0, P1)]) == []
    # first occurrence order
    assert maximal_tilde([conj(tilde(P1), tilde(P0)), tilde(P0)]) == [tilde(P1), tilde(P0)]


def test_replace_examples():
    q = P1
    assert replace(imp(tilde(P0), tilde(P0)), tilde(P0), q) is imp(q, q)
    assert replace(tilde(tilde(P0)), tilde(P0), TOP) is tilde(TOP)
    f = imp(P0, P1)
    assert replace(f, tilde(P0), TOP) is f


def test_substitute_is_simultaneous():
    f = imp(P0, P1)
    assert substitute(f, {0: P1, 1: P0}) is imp(P1, P0)
