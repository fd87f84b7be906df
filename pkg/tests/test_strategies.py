from __future__ import annotations

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from helpers import WORKED_TERM, Binding, Dummy, closed_db_terms, db, node, wf_terms
from lamred import bench, oracle, rules, strategies, syntax, terms
from lamred.strategies import (Form, Strategy, closure_env, head_norm, head_norm_combined,
                               head_norm_explicit, head_norm_implicit, hn_co, hn_eb,
                               is_hnf_shape, lazy_read, normalize_full, subst_implicit)
from lamred.terms import Meter, NonTerminating, UnsupportedInput, app, bv, const, lam, susp

ALL = list(Strategy)


def fmt(t):
    return syntax.format_term(t)


def cl(name):
    return (const(name), 0, 0, None, 0)


def test_subst_implicit_examples():
    env = closure_env([cl("a"), cl("b")])
    assert fmt(subst_implicit(bv(2), 2, 0, env)) == "b"
    env = closure_env([cl("d")])
    assert fmt(subst_implicit(app(bv(1), const("c")), 1, 0, env)) == "d c"
    env = closure_env([cl("a")])
    assert fmt(subst_implicit(lam(bv(2)), 1, 0, env)) == "\\ a"


def test_subst_implicit_leaves_its_input_alone():
    t = app(bv(1), lam(bv(2)))
    subst_implicit(t, 1, 0, closure_env([cl("a")]))
    assert fmt(t) == "#1 (\\ #2)"


def test_subst_implicit_renumbers_past_the_environment():
    env = closure_env([Dummy(0)])
    assert fmt(subst_implicit(app(bv(1), bv(3)), 1, 2, env)) == "#2 #4"


def test_implicit_shares_the_result_with_the_redex_node():
    t = app(lam(bv(1)), const("c"))
    head_norm_implicit(t)
    assert fmt(t) == "c"
    assert terms.deref(t).tag == terms.CONST and t.tag == terms.PTR


def test_implicit_k_combinator():
    t = node("(\\ \\ #2) a b")
    head_norm_implicit(t)
    assert fmt(t) == "a"


def test_implicit_reads_arguments_out_eagerly():
    t = node("(\\ ((\\ \\ ((#1 #2) #3)) p)) q")
    head_norm_implicit(t)
    assert fmt(t) == "\\ #1 p q"


def test_implicit_rejects_suspensions():
    with pytest.raises(UnsupportedInput):
        head_norm_implicit(susp(bv(1), 1, 0, [Binding(const("c"), 0)]))


def test_lazy_read_r6():
    t = susp(app(const("c"), const("d")), 1, 0, [Binding(const("a"), 0)])
    m = Meter()
    lazy_read(t, m)
    assert fmt(t) == "[c, 1, 0, (a,0)::nil] [d, 1, 0, (a,0)::nil]"
    assert m.susps == 2 and m.apps == 0


def test_lazy_read_r7():
    t = susp(lam(const("b")), 1, 0, [Binding(const("a"), 0)])
    lazy_read(t)
    assert fmt(t) == "\\ [b, 2, 1, @0::(a,0)::nil]"


def test_lazy_read_r10_assigns():
    c = const("c")
    t = susp(bv(1), 1, 0, [Binding(c, 0)])
    lazy_read(t)
    assert terms.deref(t) is c


def test_lazy_read_is_a_no_op_on_other_nodes():
    t = app(const("c"), const("d"))
    lazy_read(t)
    assert fmt(t) == "c d"


def test_explicit_identity():
    t = node("(\\ #1) c")
    head_norm_explicit(t)
    assert fmt(t) == "c"


def test_explicit_leaves_arguments_suspended():
    t = node("(\\ #1 (\\ #1) d) f")
    head_norm_explicit(t)
    h = terms.deref(t)
    assert fmt(h) == "f [\\ #1, 1, 0, (f,0)::nil] [d, 1, 0, (f,0)::nil]"
    assert terms.deref(h.b).tag == terms.SUSP


def test_explicit_whnf_of_an_abstraction_suspension():
    t = susp(lam(const("b")), 1, 0, [Binding(const("a"), 0)])
    head_norm_explicit(t, Form.WHNF)
    assert fmt(t) == "\\ [b, 2, 1, @0::(a,0)::nil]"


def test_combined_identity():
    t = node("(\\ #1) c")
    head_norm_combined(t)
    assert fmt(t) == "c"


def test_combined_worked_endpoint():
    t = node(WORKED_TERM)
    head_norm_combined(t)
    h = terms.deref(t)
    body = terms.deref(h.a)
    a1, a2 = terms.deref(terms.deref(body.a).b), terms.deref(body.b)
    assert a1.tag == terms.SUSP and a2.tag == terms.SUSP
    implicit = node(WORKED_TERM)
    head_norm_implicit(implicit)
    ib = terms.deref(terms.deref(implicit).a)
    assert terms.term_eq(rules.read_out(a1), terms.deref(ib.a).b)
    assert terms.term_eq(rules.read_out(a2), ib.b)
    worked_a1 = susp(const("t2"), 1, 1, [Binding(const("t3"), 0)])
    worked_a2 = susp(const("t3"), 0, 1, [])
    assert terms.term_eq(rules.read_out(a1), rules.read_out(worked_a1))
    assert terms.term_eq(rules.read_out(a2), rules.read_out(worked_a2))


def test_combined_unwraps_a_trivial_suspension():
    t = susp(app(const("f"), const("x")), 0, 0, [])
    head_norm_combined(t)
    assert t.tag == terms.PTR and fmt(t) == "f x"


def test_combined_reduces_inside_an_explicit_suspension():
    inner = node("(\\ \\ #2) #1")
    t = susp(inner, 1, 0, [Binding(const("a"), 0)])
    head_norm_combined(t, Form.WHNF)
    assert oracle.from_node(rules.read_out(t)) == db("\\ a")


@pytest.mark.parametrize("s", ALL)
def test_whnf_boundary_commits_the_pre_step(s):
    t = node("(\\ \\ #2) c")
    head_norm(t, s, Form.WHNF)
    h = terms.deref(t)
    assert h.tag == terms.LAM
    assert oracle.from_node(rules.read_out(h)) == db("\\ c")
    expected = {Strategy.IMPLICIT: "\\ c", Strategy.EXPLICIT: "\\ [#2, 2, 1, @0::(c,0)::nil]",
                Strategy.COMBINED: "\\ [#2, 2, 1, @0::(c,0)::nil]"}[s]
    assert fmt(t) == expected


@pytest.mark.parametrize("s", ALL)
def test_k_a_b_normalizes_to_a(s):
    t = node("(\\ \\ #2) a b")
    normalize_full(t, s)
    assert fmt(t) == "a"


@pytest.mark.parametrize("s", ALL)
def test_church_plus_two_three(s):
    t = bench.church_case("plus", 2, 3).build()
    normalize_full(t, s)
    assert oracle.from_node(t) == bench.church_spec(5)


@pytest.mark.parametrize("s", ALL)
def test_fuel_counts_beta_steps(s):
    t = node("(\\ #1 #1) (\\ #1 #1)")
    m = Meter()
    with pytest.raises(NonTerminating) as info:
        normalize_full(t, s, 50, m)
    assert info.value.steps == 50 and m.beta_steps == 50


@pytest.mark.parametrize("s", ALL)
def test_unbounded_fuel(s):
    t = bench.church_case("mult", 3, 4).build()
    normalize_full(t, s, None)
    assert oracle.from_node(t) == bench.church_spec(12)


def test_strategy_by_name():
    t = node("(\\ #1) c")
    normalize_full(t, "combined")
    assert fmt(t) == "c"
    with pytest.raises(ValueError):
        normalize_full(node("c"), "eager")


def test_hook_sees_every_rule():
    seen = []
    t = node(WORKED_TERM)
    head_norm(t, Strategy.EXPLICIT, hook=lambda r, n: seen.append(r))
    assert seen == ["beta_s", "r6", "r7", "beta_s'", "r7", "r6", "r6", "r4"]


def test_hn_eb_returns_a_pre_step_for_whnf_abstractions():
    q = hn_eb(node("(\\ \\ #2) c"), 0, 0, None, True)
    assert not q.trivial and (q.ol, q.nl) == (1, 0)
    assert terms.deref(q.term).tag == terms.LAM
    assert hn_eb(node("(\\ \\ #2) c"), 0, 0, None, False).trivial


def test_hn_co_pre_step():
    q = hn_co(node("(\\ \\ #2) c"), 0, 0, None, True)
    assert not q.trivial and terms.deref(q.term).tag == terms.LAM


# -- properties ---------------------------------------------------------------


def _nf(spec):
    try:
        return oracle.normalize_naive(spec, 2000)
    except NonTerminating:
        return None


@given(closed_db_terms(6))
def test_strategies_agree_with_the_oracle(spec):
    expected = _nf(spec)
    assume(expected is not None)
    for s in ALL:
        t = oracle.to_node(spec)
        normalize_full(t, s, None)
        assert oracle.from_node(t) == expected


@given(wf_terms(4))
def test_explicit_and_combined_agree_on_suspension_input(t):
    spec = oracle.from_node(rules.read_out(t))
    expected = _nf(spec)
    assume(expected is not None)
    for s in (Strategy.EXPLICIT, Strategy.COMBINED):
        u = _copy(t)
        normalize_full(u, s, None)
        assert oracle.from_node(u) == expected


def _copy(t):
    """A structurally equal graph with no shared nodes."""
    t = terms.deref(t)
    if t.tag == terms.APP:
        return app(_copy(t.a), _copy(t.b))
    if t.tag == terms.LAM:
        return lam(_copy(t.a))
    if t.tag == terms.SUSP:
        items = [Dummy(i.level) if isinstance(i, Dummy) else Binding(_copy(i.term), i.level)
                 for i in terms.env_items(t.env)]
        return susp(_copy(t.a), t.ol, t.nl, items)
    return terms.Term(t.tag, t.a)


@given(closed_db_terms(6), st.booleans())
def test_pre_step_contract(spec, whnf):
    for kernel in (hn_eb, hn_co):
        t = oracle.to_node(spec)
        try:
            q = kernel(t, 0, 0, None, whnf, fuel=2000)
        except NonTerminating:
            continue
        if not q.trivial:
            assert whnf and terms.deref(q.term).tag == terms.LAM


def _spine(spec):
    n = 0
    while spec[0] == "l":
        n, spec = n + 1, spec[1]
    args = []
    while spec[0] == "a":
        args.append(spec[2])
        spec = spec[1]
    return n, spec, args[::-1]


@given(closed_db_terms(6), st.sampled_from(ALL))
def test_head_norm_reaches_the_oracle_hnf(spec, s):
    try:
        expected = oracle.head_normalize_naive(spec, 2000)
    except NonTerminating:
        assume(False)
    t = oracle.to_node(spec)
    head_norm(t, s, Form.HNF, None)
    assert is_hnf_shape(t)
    n, head, args = _spine(oracle.from_node(rules.read_out(t)))
    en, ehead, eargs = _spine(expected)
    assert (n, head, len(args)) == (en, ehead, len(eargs))
    for a, e in zip(args, eargs):
        # arguments are beta-equal to the oracle's, not necessarily identical
        na, ne = _nf(a), _nf(e)
        if na is not None and ne is not None:
            assert na == ne


@given(closed_db_terms(6), st.sampled_from(ALL))
def test_shared_subterms_are_reduced_once(spec, s):
    expected = _nf(spec)
    assume(expected is not None)
    single = Meter()
    normalize_full(oracle.to_node(spec), s, None, single)
    shared = oracle.to_node(spec)
    root = app(app(const("f"), shared), shared)
    m = Meter()
    normalize_full(root, s, None, m)
    h = terms.deref(root)
    assert terms.deref(terms.deref(h.a).b) is terms.deref(h.b)
    assert oracle.from_node(h.b) == expected
    assert m.beta_steps == single.beta_steps
