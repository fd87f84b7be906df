"""The shared term graph: constructors, indirections, environments, checks.

Nodes come from the active core (see ``lamred.backend``).  Their kind is
updated in place by the reduction kernels, so node identity matters: two
``Term`` objects are the same subterm only if they are the same object.
"""

from __future__ import annotations

from typing import NamedTuple

from lamred.backend import core

Term = core.Term
EnvCell = core.EnvCell
Meter = core.Meter
NonTerminating = core.NonTerminating
UnsupportedInput = core.UnsupportedInput

CONST = core.CONST
FVAR = core.FVAR
BV = core.BV
APP = core.APP
LAM = core.LAM
SUSP = core.SUSP
PTR = core.PTR
KIND_NAMES = core.KIND_NAMES

deref = core.deref
assign = core.assign
env_len = core.env_len

__all__ = [
    "Term", "EnvCell", "Meter", "NonTerminating", "UnsupportedInput",
    "CONST", "FVAR", "BV", "APP", "LAM", "SUSP", "PTR", "KIND_NAMES",
    "Dummy", "Binding", "Violation",
    "const", "fvar", "bv", "app", "apps", "lam", "lams", "susp", "ptr",
    "make_env", "env_items", "prepend", "env_nth", "env_len",
    "deref", "assign", "kind", "term_eq", "check_well_formed",
]


class Dummy(NamedTuple):
    level: int


class Binding(NamedTuple):
    term: Term
    level: int


class Violation(NamedTuple):
    node: Term
    constraint: str
    detail: str


# -- construction ------------------------------------------------------------


def _rec(meter, tag):
    if meter is not None:
        meter.record(tag)


def const(name: str, meter=None) -> Term:
    _rec(meter, CONST)
    return Term(CONST, name)


def fvar(name: str, meter=None) -> Term:
    _rec(meter, FVAR)
    return Term(FVAR, name)


def bv(i: int, meter=None) -> Term:
    if i < 1:
        raise ValueError("de Bruijn indices start at 1, got %d" % i)
    _rec(meter, BV)
    return Term(BV, i)


def app(f: Term, x: Term, meter=None) -> Term:
    _rec(meter, APP)
    return Term(APP, f, x)


def apps(f: Term, *xs: Term, meter=None) -> Term:
    for x in xs:
        f = app(f, x, meter)
    return f


def lam(body: Term, meter=None) -> Term:
    _rec(meter, LAM)
    return Term(LAM, body)


def lams(n: int, body: Term, meter=None) -> Term:
    for _ in range(n):
        body = lam(body, meter)
    return body


def susp(skel: Term, ol: int, nl: int, env=None, meter=None) -> Term:
    """A suspension node.  ``env`` is a cell chain or a list of items."""
    if isinstance(env, (list, tuple)):
        env = make_env(env, meter)
    _rec(meter, SUSP)
    return Term(SUSP, skel, None, ol, nl, env)


def ptr(target: Term, meter=None) -> Term:
    _rec(meter, PTR)
    return Term(PTR, target)


# -- environments ------------------------------------------------------------


def prepend(item, env=None, meter=None):
    """A new environment with ``item`` in front of ``env``; the tail is shared."""
    if isinstance(item, Dummy):
        if meter is not None:
            meter.dummies += 1
        return EnvCell(None, item.level, env)
    if isinstance(item, Binding):
        if meter is not None:
            meter.bindings += 1
        return EnvCell(item.term, item.level, env)
    raise TypeError("expected Dummy or Binding, got %r" % (item,))


def make_env(items, meter=None):
    env = None
    for item in reversed(list(items)):
        env = prepend(item, env, meter)
    return env


def _item(cell):
    if cell.term is None:
        return Dummy(cell.level)
    return Binding(cell.term, cell.level)


def env_items(env) -> list:
    out = []
    while env is not None:
        out.append(_item(env))
        env = env.next
    return out


def env_nth(env, i: int):
    """The ``i``-th item of ``env``, counting from 1."""
    return _item(core.env_nth(env, i))


# -- inspection --------------------------------------------------------------


def kind(t: Term) -> str:
    return KIND_NAMES[t.tag]


def term_eq(s: Term, t: Term) -> bool:
    """Structural equality, looking through indirections."""
    todo = [(s, t)]
    while todo:
        x, y = todo.pop()
        x = deref(x)
        y = deref(y)
        if x is y:
            continue
        if x.tag != y.tag:
            return False
        tag = x.tag
        if tag in (CONST, FVAR, BV):
            if x.a != y.a:
                return False
        elif tag == APP:
            todo.append((x.b, y.b))
            todo.append((x.a, y.a))
        elif tag == LAM:
            todo.append((x.a, y.a))
        elif tag == SUSP:
            if x.ol != y.ol or x.nl != y.nl:
                return False
            ex, ey = x.env, y.env
            while ex is not None and ey is not None:
                if ex.level != ey.level or (ex.term is None) != (ey.term is None):
                    return False
                if ex.term is not None:
                    todo.append((ex.term, ey.term))
                ex, ey = ex.next, ey.next
            if ex is not None or ey is not None:
                return False
            todo.append((x.a, y.a))
    return True


def check_well_formed(t: Term) -> list[Violation]:
    """Every violated well-formedness constraint in the graph under ``t``."""
    out = []
    seen = set()
    todo = [t]
    while todo:
        x = todo.pop()
        if id(x) in seen:
            continue
        seen.add(id(x))
        tag = x.tag
        if tag == BV:
            if x.a < 1:
                out.append(Violation(x, "index", "bound index %d is not positive" % x.a))
        elif tag == APP:
            todo.append(x.b)
            todo.append(x.a)
        elif tag in (LAM, PTR):
            todo.append(x.a)
        elif tag == SUSP:
            n = env_len(x.env)
            if n != x.ol:
                out.append(Violation(x, "length", "environment length %d differs from ol %d" % (n, x.ol)))
            e = x.env
            while e is not None:
                if e.term is None:
                    if not e.level < x.nl:
                        out.append(Violation(
                            x, "dummy-level", "@%d needs %d < nl = %d" % (e.level, e.level, x.nl)))
                else:
                    if not e.level <= x.nl:
                        out.append(Violation(
                            x, "binding-level", "binding level %d exceeds nl = %d" % (e.level, x.nl)))
                    todo.append(e.term)
                e = e.next
            todo.append(x.a)
    return out
