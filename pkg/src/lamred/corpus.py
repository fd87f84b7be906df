"""Seeded random terms for the property and acceptance suites.

All generators take a ``random.Random`` so that a corpus is a pure function of
its seed.
"""

from __future__ import annotations

import random

from lamred import names, terms
from lamred.terms import Term

__all__ = ["random_db", "random_closed_db", "random_wf_term", "random_named_with_head_redex"]

_CONSTS = ("a", "b", "c")
_BINDERS = ("x", "y", "z", "w")


def random_db(rng: random.Random, depth: int, binders: int = 0) -> tuple:
    """An oracle term of tree depth at most ``depth`` whose free indices are
    at most ``binders``.  Redexes are generated on purpose."""
    if depth <= 1 or rng.random() < 0.12:
        if binders and rng.random() < 0.75:
            return ("i", rng.randint(1, binders))
        return ("c", rng.choice(_CONSTS))
    r = rng.random()
    if r < 0.3:
        return ("l", random_db(rng, depth - 1, binders + 1))
    if r < 0.65 or depth < 3:
        return ("a", random_db(rng, depth - 1, binders), random_db(rng, depth - 1, binders))
    body = random_db(rng, depth - 2, binders + 1)
    return ("a", ("l", body), random_db(rng, depth - 1, binders))


def random_closed_db(rng: random.Random, depth: int = 7) -> tuple:
    return random_db(rng, depth, 0)


def random_wf_term(rng: random.Random, depth: int = 4, meter=None) -> Term:
    """A well-formed term that may contain suspensions anywhere, including
    nested in skeletons and inside environment bindings."""
    if depth <= 1 or rng.random() < 0.15:
        r = rng.random()
        if r < 0.6:
            return terms.bv(rng.randint(1, 4), meter)
        if r < 0.85:
            return terms.const(rng.choice(_CONSTS), meter)
        return terms.fvar("X", meter)
    r = rng.random()
    if r < 0.2:
        return terms.lam(random_wf_term(rng, depth - 1, meter), meter)
    if r < 0.45:
        f = random_wf_term(rng, depth - 1, meter)
        return terms.app(f, random_wf_term(rng, depth - 1, meter), meter)
    ol = rng.randint(0, 3)
    nl = rng.randint(0, 3)
    items = []
    for _ in range(ol):
        if nl > 0 and rng.random() < 0.4:
            items.append(terms.Dummy(rng.randrange(nl)))
        else:
            items.append(terms.Binding(random_wf_term(rng, depth - 2, meter), rng.randint(0, nl)))
    skel = random_wf_term(rng, depth - 1, meter)
    return terms.susp(skel, ol, nl, items, meter)


def _random_named(rng, depth, scope):
    if depth <= 1 or rng.random() < 0.15:
        if scope and rng.random() < 0.75:
            return names.AbsVar(rng.choice(scope))
        return names.Const(rng.choice(_CONSTS))
    r = rng.random()
    if r < 0.4:
        v = rng.choice(_BINDERS)
        return names.Abs(v, _random_named(rng, depth - 1, scope + [v]))
    return names.App(_random_named(rng, depth - 1, scope), _random_named(rng, depth - 1, scope))


def random_named_with_head_redex(rng: random.Random, depth: int = 5) -> names.NamedTerm:
    """A closed named term whose head is a beta redex.

    Binder names come from a small pool, so arguments regularly carry free
    variables that a binder of the function body would capture.
    """
    outer = [rng.choice(_BINDERS) for _ in range(rng.randint(0, 3))]
    v = rng.choice(_BINDERS)
    body = _random_named(rng, depth, outer + [v])
    arg = _random_named(rng, depth, outer)
    t = names.App(names.Abs(v, body), arg)
    for _ in range(rng.randint(0, 2)):
        t = names.App(t, _random_named(rng, depth - 1, outer))
    for name in reversed(outer):
        t = names.Abs(name, t)
    return t
