from __future__ import annotations

import pytest
from hypothesis import given

from helpers import Binding, Dummy, db, db_terms, wf_terms
from lamred import names, oracle, rules, terms
from lamred.syntax import ParseError, format_env, format_term, parse_db, parse_term
from lamred.terms import bv, const, lam, susp


def test_named_input_translates():
    assert db("\\x.\\y. x") == ("l", ("l", ("i", 2)))


def test_application_of_an_abstraction():
    t = parse_db("(\\x. x) c")
    assert oracle.from_node(t) == ("a", ("l", ("i", 1)), ("c", "c"))


def test_index_zero_is_rejected():
    with pytest.raises(ParseError) as info:
        parse_term("#0")
    assert (info.value.line, info.value.column) == (1, 1)


def test_error_positions_are_line_and_column():
    with pytest.raises(ParseError) as info:
        parse_term("\\x.\n  x )")
    assert (info.value.line, info.value.column) == (2, 5)
    assert "line 2, column 5" in str(info.value)


def test_named_and_indexed_cannot_mix():
    with pytest.raises(ParseError):
        parse_term("\\x. #1")
    with pytest.raises(ParseError):
        parse_term("(\\ #1) (\\x. x)")


def test_unicode_lambda_is_accepted():
    assert db("λx. λy. y x") == db("\\x.\\y. y x")
    assert db("λ λ #2") == ("l", ("l", ("i", 2)))


def test_identifier_classes():
    t = parse_term("\\x. x c F")
    assert isinstance(t, names.Abs)
    assert t.body == names.App(names.App(names.AbsVar("x"), names.Const("c")), names.InstVar("F"))


def test_application_is_left_associative():
    assert db("a b c") == ("a", ("a", ("c", "a"), ("c", "b")), ("c", "c"))
    assert db("\\ #1 \\ #1") == ("l", ("a", ("i", 1), ("l", ("i", 1))))


@pytest.mark.parametrize("src", ["", "(", "a )", "\\x.", "[a, 1, 0]", "#", "a ; b"])
def test_parse_errors(src):
    with pytest.raises(ParseError):
        parse_term(src)


def test_format_nested_lambdas():
    t = lam(lam(bv(2)))
    assert format_term(t) == "\\ \\ #2"
    assert format_term(t, unicode=True) == "(λ (λ #2))"


def test_format_suspension():
    t = susp(bv(1), 1, 0, [Binding(const("c"), 0)])
    assert format_term(t) == "[#1, 1, 0, (c,0)::nil]"
    assert format_env(terms.make_env([Dummy(0), Binding(const("c"), 1)])) == "@0::(c,1)::nil"


def test_format_is_transparent_to_indirections():
    assert format_term(terms.ptr(terms.app(terms.ptr(const("f")), bv(1)))) == "f #1"


def test_minimal_parentheses():
    assert format_term(parse_db("(\\ #1) (a b) (\\ #1)")) == "(\\ #1) (a b) (\\ #1)"
    assert format_term(parse_db("a (\\ #1 c)")) == "a (\\ #1 c)"


def test_suspension_syntax_round_trips():
    src = "[#2, 2, 1, @0::([t2, 1, 0, (t3,0)::nil],0)::nil]"
    t = parse_db(src)
    assert format_term(t) == src
    assert terms.check_well_formed(t) == []


@given(db_terms(6, 0))
def test_parse_format_round_trip(spec):
    t = oracle.to_node(spec)
    for uni in (False, True):
        assert oracle.from_node(parse_db(format_term(t, unicode=uni))) == spec


@given(wf_terms())
def test_suspension_round_trip(t):
    back = parse_db(format_term(t))
    assert terms.term_eq(back, t)
    assert terms.term_eq(rules.read_out(back), rules.read_out(t))
