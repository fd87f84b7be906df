from __future__ import annotations

import pytest
from hypothesis import given

from helpers import WORKED_TERM, Binding, closed_db_terms, db, db_terms, node, wf_terms
from lamred import bench, oracle, rules, strategies, terms
from lamred.oracle import SubstMap, simul_subst
from lamred.terms import NonTerminating, bv, const, susp

C = ("c", "c")
OMEGA = ("l", ("a", ("i", 1), ("i", 1)))
OMEGA2 = ("a", OMEGA, OMEGA)


def test_simul_subst_examples():
    assert simul_subst(("i", 1), SubstMap((C,), 0)) == C
    assert simul_subst(("l", ("i", 2)), SubstMap((C,), 0)) == ("l", C)
    assert simul_subst(("i", 3), SubstMap((), -1)) == ("i", 2)


def test_simul_subst_lifts_prefix_terms_under_binders():
    # S(λ #2; #1) shifts the substituted index past the new binder.
    assert simul_subst(("l", ("i", 2)), SubstMap((("i", 1),), 0)) == ("l", ("i", 2))
    assert simul_subst(("l", ("l", ("i", 3))), SubstMap((("i", 4),), -1)) == ("l", ("l", ("i", 6)))


def test_simul_subst_fails_on_an_index_mapped_below_one():
    with pytest.raises(ValueError):
        simul_subst(("i", 1), SubstMap((), -1))
    with pytest.raises(ValueError):
        simul_subst(("l", ("a", ("i", 1), ("i", 3))), SubstMap((C,), -3))


def test_simul_subst_refuses_index_zero():
    with pytest.raises(ValueError):
        oracle.shift(("i", 1), -1)


def test_beta_contract_db_examples():
    assert oracle.beta_contract_db(("a", ("l", ("i", 1)), C)) == C
    k_a = oracle.beta_contract_db(("a", db("\\ \\ #2"), ("c", "a")))
    assert oracle.beta_contract_db(("a", k_a, ("c", "b"))) == ("c", "a")
    with pytest.raises(ValueError):
        oracle.beta_contract_db(("a", C, C))


def test_worked_term_endpoint_agrees_with_the_strategies():
    expected = db("\\ #1 t2 t3")
    assert oracle.normalize_naive(db(WORKED_TERM)) == expected
    for s in strategies.Strategy:
        t = node(WORKED_TERM)
        strategies.head_norm(t, s)
        assert oracle.from_node(rules.read_out(t)) == expected


def test_head_normalize_naive_examples():
    assert oracle.head_normalize_naive(("a", ("l", ("i", 1)), C), 10) == C
    with pytest.raises(NonTerminating) as info:
        oracle.head_normalize_naive(OMEGA2, 100)
    assert info.value.steps == 100


def test_head_normalize_naive_stops_at_a_rigid_head():
    t = ("l", ("a", C, ("a", ("l", ("i", 1)), OMEGA2)))
    assert oracle.head_normalize_naive(t, 10) == t


def test_head_normalize_naive_keeps_contracting_a_diverging_head():
    # λ((λ#1)(ωω)) contracts to λ(ωω), whose head is still a redex.
    with pytest.raises(NonTerminating) as info:
        oracle.head_normalize_naive(("l", ("a", ("l", ("i", 1)), OMEGA2)), 10)
    assert info.value.steps == 10


def test_normalize_naive_examples():
    k = db("\\ \\ #2")
    assert oracle.normalize_naive(("a", ("a", k, ("c", "a")), ("c", "b")), 100) == ("c", "a")
    plus22 = ("a", ("a", bench.PLUS, bench.church_spec(2)), bench.church_spec(2))
    four = oracle.normalize_naive(plus22, 10**4)
    assert four == db("\\ \\ #2 (#2 (#2 (#2 #1)))")
    skkc = ("a", ("a", ("a", bench.S, bench.K), bench.K), C)
    assert oracle.normalize_naive(skkc, 10**3) == C


def test_normalize_counted_reports_beta_steps():
    k = db("\\ \\ #2")
    assert oracle.normalize_counted(("a", ("a", k, ("c", "a")), ("c", "b"))) == (("c", "a"), 2)


def test_normalize_naive_accepts_graph_terms():
    assert oracle.normalize_naive(node("(\\x. x) c")) == C


def test_randomized_read_out_examples():
    t = oracle.to_node(db("\\ #1 (\\ #2) c"))
    assert oracle.randomized_read_out(t, 7) == db("\\ #1 (\\ #2) c")
    s = susp(bv(2), 2, 0, [Binding(const("a"), 0), Binding(const("b"), 0)])
    assert {oracle.randomized_read_out(s, seed) for seed in range(1, 21)} == {("c", "b")}


def test_randomized_read_out_on_the_worked_intermediate():
    t = node(WORKED_TERM)
    strategies.head_norm(t, "explicit")
    expected = oracle.from_node(rules.read_out(t))
    assert {oracle.randomized_read_out(t, seed) for seed in range(20)} == {expected}


def test_size():
    assert oracle.size(db("\\ #1 c")) == 4


# -- properties ---------------------------------------------------------------


@given(db_terms(5, 3))
def test_lift_identity(t):
    assert simul_subst(t, SubstMap((), 0)) == t


@given(closed_db_terms(5), closed_db_terms(4))
def test_beta_contract_matches_reading_out_beta_s(body_src, arg):
    body = ("l", body_src)
    redex = ("a", body, arg)
    rule, out = rules.beta_step(oracle.to_node(redex))
    assert rule in (rules.RuleId.BetaS, rules.RuleId.BetaSPrime)
    assert oracle.from_node(rules.read_out(out)) == oracle.beta_contract_db(redex)


@given(db_terms(5, 1), closed_db_terms(4))
def test_beta_contract_matches_reading_out_open_body(body, arg):
    redex = ("a", ("l", body), arg)
    _, out = rules.beta_step(oracle.to_node(redex))
    assert oracle.from_node(rules.read_out(out)) == oracle.beta_contract_db(redex)


@given(wf_terms())
def test_randomized_read_out_agrees_with_read_out(t):
    assert oracle.randomized_read_out(t, 1) == oracle.randomized_read_out(t, 2) == \
        oracle.from_node(rules.read_out(t))


def test_from_node_rejects_suspensions():
    with pytest.raises(ValueError):
        oracle.from_node(susp(bv(1), 1, 0, [Binding(const("a"), 0)]))


def test_to_node_round_trip():
    spec = db("\\ \\ #2 (\\ #1 X) c")
    assert oracle.from_node(oracle.to_node(spec)) == spec
    assert terms.check_well_formed(oracle.to_node(spec)) == []
