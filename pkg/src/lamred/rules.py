"""Single rewrite steps of the suspension calculus and full reading-out.

These are the rule schemas taken literally: every step builds fresh nodes and
leaves its input alone.  The strategies implement the same rules
destructively; this module is the reference they are checked against.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from lamred import terms
from lamred._deep import deep
from lamred.terms import APP, BV, CONST, FVAR, LAM, PTR, SUSP, Term, deref

__all__ = [
    "RuleId", "READING_RULES", "TraceRecord",
    "reading_step", "beta_step", "read_out", "path_to", "format_step",
]


class RuleId(str, enum.Enum):
    BetaS = "beta_s"
    BetaSPrime = "beta_s'"
    R1 = "r1"
    R2 = "r2"
    R3 = "r3"
    R4 = "r4"
    R6 = "r6"
    R7 = "r7"
    R10 = "r10"
    R11 = "r11"
    R12 = "r12"

    def __str__(self):
        return self.value


READING_RULES = frozenset(r for r in RuleId if r not in (RuleId.BetaS, RuleId.BetaSPrime))


@dataclass(frozen=True)
class TraceRecord:
    step: int
    rule: RuleId
    path: str
    snapshot: str


def format_step(rec: TraceRecord) -> str:
    return "STEP %d RULE %s AT %s" % (rec.step, rec.rule.value, rec.path)


def _mk(meter, tag, a=None, b=None, ol=0, nl=0, env=None):
    if meter is not None:
        meter.record(tag)
    return Term(tag, a, b, ol, nl, env)


def _cell(meter, t, level, rest):
    if meter is not None:
        if t is None:
            meter.dummies += 1
        else:
            meter.bindings += 1
    return terms.EnvCell(t, level, rest)


def reading_step(t: Term, meter=None):
    """Apply the reading rule at the root of suspension ``t``.

    Returns ``(rule, result)``, or ``None`` when the skeleton is itself a
    suspension.
    """
    t = deref(t)
    if t.tag != SUSP:
        raise ValueError("reading_step needs a suspension, got %s" % terms.kind(t))
    skel = deref(t.a)
    ol, nl, env = t.ol, t.nl, t.env
    tag = skel.tag
    if meter is not None:
        meter.reading_steps += 1
    if tag == CONST:
        return RuleId.R1, skel
    if tag == FVAR:
        return RuleId.R2, skel
    if tag == BV:
        i = skel.a
        if i > ol:
            return RuleId.R3, _mk(meter, BV, i - ol + nl)
        item = terms.core.env_nth(env, i)
        level = item.level
        if item.term is None:
            return RuleId.R4, _mk(meter, BV, nl - level)
        bound = item.term
        if nl == level:
            return RuleId.R10, bound
        d = deref(bound)
        if d.tag == SUSP:
            return RuleId.R11, _mk(meter, SUSP, d.a, None, d.ol, d.nl + nl - level, d.env)
        return RuleId.R12, _mk(meter, SUSP, d, None, 0, nl - level, None)
    if tag == APP:
        f = _mk(meter, SUSP, skel.a, None, ol, nl, env)
        x = _mk(meter, SUSP, skel.b, None, ol, nl, env)
        return RuleId.R6, _mk(meter, APP, f, x)
    if tag == LAM:
        body = _mk(meter, SUSP, skel.a, None, ol + 1, nl + 1, _cell(meter, None, nl, env))
        return RuleId.R7, _mk(meter, LAM, body)
    if meter is not None:
        meter.reading_steps -= 1
    return None


def beta_step(t: Term, meter=None):
    """Contract the beta redex at the root of ``t``, or ``None`` if there is none."""
    t = deref(t)
    if t.tag != APP:
        return None
    f = deref(t.a)
    if f.tag != LAM:
        return None
    body = deref(f.a)
    arg = t.b
    if meter is not None:
        meter.beta_steps += 1
    if body.tag == SUSP:
        e = body.env
        if e is not None and e.term is None and body.nl == e.level + 1:
            level = e.level
            return RuleId.BetaSPrime, _mk(
                meter, SUSP, body.a, None, body.ol, level, _cell(meter, arg, level, e.next))
    return RuleId.BetaS, _mk(meter, SUSP, body, None, 1, 0, _cell(meter, arg, 0, None))


@deep
def read_out(t: Term, meter=None) -> Term:
    """The de Bruijn term underlying ``t``, built fresh; no beta steps."""

    def go(u):
        u = deref(u)
        tag = u.tag
        if tag == SUSP:
            step = reading_step(u, meter)
            while step is None:
                inner = go(u.a)
                u = _mk(meter, SUSP, inner, None, u.ol, u.nl, u.env)
                step = reading_step(u, meter)
            return go(step[1])
        if tag == APP:
            f = go(u.a)
            return _mk(meter, APP, f, go(u.b))
        if tag == LAM:
            return _mk(meter, LAM, go(u.a))
        return _mk(meter, tag, u.a)

    return go(t)


def path_to(root: Term, node: Term) -> str:
    """Position of ``node`` in the tree drawn from ``root``, e.g. ``/fun/arg``.

    Indirections are transparent and the leftmost occurrence wins.  Returns
    ``"-"`` when ``node`` is unreachable.
    """
    todo = [(root, "")]
    seen = set()
    while todo:
        x, path = todo.pop()
        while True:
            if x is node:
                return path or "/"
            if x.tag != PTR:
                break
            x = x.a
        if id(x) in seen:
            continue
        seen.add(id(x))
        tag = x.tag
        if tag == APP:
            todo.append((x.b, path + "/arg"))
            todo.append((x.a, path + "/fun"))
        elif tag == LAM:
            todo.append((x.a, path + "/body"))
        elif tag == SUSP:
            e, k, envs = x.env, 1, []
            while e is not None:
                if e.term is not None:
                    envs.append((e.term, "%s/env%d" % (path, k)))
                e, k = e.next, k + 1
            todo.extend(reversed(envs))
            todo.append((x.a, path + "/skel"))
    return "-"
