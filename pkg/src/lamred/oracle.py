"""Naive de Bruijn beta reduction, used as ground truth.

The oracle works on its own immutable representation so that it shares no
code with the graph kernels it checks:

    ("c", name)   constant
    ("v", name)   instantiatable variable
    ("i", k)      bound index, k >= 1
    ("a", f, x)   application
    ("l", body)   abstraction

``from_node`` and ``to_node`` convert to and from graph terms.  Every public
function also accepts a graph term and converts it first.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from lamred import rules, terms
from lamred._deep import deep
from lamred.terms import APP, BV, CONST, FVAR, LAM, SUSP, NonTerminating, Term, deref

__all__ = [
    "DbTerm", "SubstMap", "from_node", "to_node", "size", "shift",
    "simul_subst", "beta_contract_db", "contract_head", "has_head_redex",
    "is_hnf", "head_normalize_naive", "normalize_naive", "normalize_counted",
    "randomized_read_out", "DEFAULT_FUEL",
]

DbTerm = tuple
DEFAULT_FUEL = 100_000


@dataclass(frozen=True)
class SubstMap:
    """The sequence ``prefix[0], ..., prefix[k-1], #(k+1+shift), #(k+2+shift), ...``.

    A shift below ``-k`` is allowed; substituting then fails only if a term
    actually uses an index that would be mapped below 1.
    """

    prefix: tuple = ()
    shift: int = 0


# -- conversion --------------------------------------------------------------


@deep
def from_node(t: Term) -> DbTerm:
    """A graph term without suspensions as an oracle term."""

    def go(u):
        u = deref(u)
        tag = u.tag
        if tag == APP:
            return ("a", go(u.a), go(u.b))
        if tag == LAM:
            return ("l", go(u.a))
        if tag == BV:
            return ("i", u.a)
        if tag == CONST:
            return ("c", u.a)
        if tag == FVAR:
            return ("v", u.a)
        raise ValueError("not a pure de Bruijn term: found %s" % terms.kind(u))

    return go(t)


@deep
def to_node(t: DbTerm, meter=None) -> Term:
    def go(u):
        k = u[0]
        if k == "a":
            f = go(u[1])
            return terms.app(f, go(u[2]), meter)
        if k == "l":
            return terms.lam(go(u[1]), meter)
        if k == "i":
            return terms.bv(u[1], meter)
        if k == "c":
            return terms.const(u[1], meter)
        if k == "v":
            return terms.fvar(u[1], meter)
        raise ValueError("bad oracle term %r" % (u,))

    return go(t)


def _pure(t) -> DbTerm:
    return from_node(t) if isinstance(t, Term) else t


def size(t: DbTerm) -> int:
    n = 0
    todo = [t]
    while todo:
        u = todo.pop()
        n += 1
        if u[0] == "a":
            todo.append(u[1])
            todo.append(u[2])
        elif u[0] == "l":
            todo.append(u[1])
    return n


# -- substitution ------------------------------------------------------------

# max free index per subterm, keyed by id; the tuple is kept alive with it
_FREE: dict = {}
_FREE_LIMIT = 1 << 21


def _maxfree(t) -> int:
    """The largest free index of ``t`` (0 when closed)."""
    k = t[0]
    if k == "i":
        return t[1]
    if k == "c" or k == "v":
        return 0
    hit = _FREE.get(id(t))
    if hit is not None:
        return hit[1]
    if k == "a":
        v = max(_maxfree(t[1]), _maxfree(t[2]))
    else:
        v = max(_maxfree(t[1]) - 1, 0)
    if len(_FREE) >= _FREE_LIMIT:
        _FREE.clear()
    _FREE[id(t)] = (t, v)
    return v


def shift(t: DbTerm, d: int, cutoff: int = 0) -> DbTerm:
    """Add ``d`` to every index of ``t`` above ``cutoff`` (its free indices)."""
    if d == 0:
        return t
    memo = {}

    def go(u, c):
        if _maxfree(u) <= c:
            return u
        key = (id(u), c)
        hit = memo.get(key)
        if hit is not None:
            return hit
        k = u[0]
        if k == "i":
            j = u[1] + d
            if j < 1:
                raise ValueError("renumbering produced index %d" % j)
            r = ("i", j)
        elif k == "a":
            r = ("a", go(u[1], c), go(u[2], c))
        else:
            r = ("l", go(u[1], c + 1))
        memo[key] = r
        return r

    return _run(go, t, cutoff)


def simul_subst(t, sigma: SubstMap) -> DbTerm:
    """``S(t; sigma)``.

    Crossing an abstraction lifts the sequence to ``#1, s1', s2', ...`` where
    ``s'`` renumbers ``s`` by one.  The lifts are not materialized: after
    ``depth`` abstractions, index ``depth + j`` maps to prefix item ``j``
    renumbered by ``depth`` in one pass.  A subterm whose free indices are
    all bound within the current depth is left as it is, which is what the
    defining clauses compute for it anyway, and shared subterms are
    substituted once.
    """
    t = _pure(t)
    prefix = tuple(_pure(s) for s in sigma.prefix)
    k = len(prefix)
    off = sigma.shift

    memo = {}
    lifted = {}

    def go(u, depth):
        if _maxfree(u) <= depth:
            return u
        key = (id(u), depth)
        hit = memo.get(key)
        if hit is not None:
            return hit
        tag = u[0]
        if tag == "i":
            i = u[1]
            if i <= depth + k:
                lk = (i - depth, depth)
                r = lifted.get(lk)
                if r is None:
                    r = lifted[lk] = shift(prefix[i - depth - 1], depth)
            else:
                j = i + off
                if j <= depth:
                    raise ValueError("substitution produced index %d" % (j - depth))
                r = ("i", j)
        elif tag == "a":
            r = ("a", go(u[1], depth), go(u[2], depth))
        else:
            r = ("l", go(u[1], depth + 1))
        memo[key] = r
        return r

    return _run(go, t, 0)


@deep
def _run(fn, *args):
    return fn(*args)


def beta_contract_db(t) -> DbTerm:
    """Contract the redex ``(lambda t1) t2`` to ``S(t1; t2, #1, #2, ...)``."""
    t = _pure(t)
    if t[0] != "a" or t[1][0] != "l":
        raise ValueError("not a beta redex")
    return simul_subst(t[1][1], SubstMap((t[2],), -1))


# -- head reduction ----------------------------------------------------------


def _unwind(t):
    """Split ``t`` into binder count, head and arguments.

    The arguments come back as a stack: the first argument is last.
    """
    n = 0
    while t[0] == "l":
        n += 1
        t = t[1]
    stack = []
    while t[0] == "a":
        stack.append(t[2])
        t = t[1]
    return n, t, stack


def _rebuild(n, head, stack):
    t = head
    for a in reversed(stack):
        t = ("a", t, a)
    for _ in range(n):
        t = ("l", t)
    return t


def has_head_redex(t) -> bool:
    _, head, args = _unwind(_pure(t))
    return head[0] == "l" and bool(args)


def is_hnf(t) -> bool:
    return not has_head_redex(t)


def contract_head(t) -> DbTerm:
    """Contract the head redex of ``t``, which must have one."""
    n, head, args = _unwind(_pure(t))
    if head[0] != "l" or not args:
        raise ValueError("term has no head redex")
    new = beta_contract_db(("a", head, args.pop()))
    return _rebuild(n, new, args)


class _Fuel:
    __slots__ = ("left", "used")

    def __init__(self, fuel):
        self.left = fuel
        self.used = 0

    def spend(self):
        if self.left <= 0:
            raise NonTerminating(self.used)
        self.left -= 1
        self.used += 1


def _hnf(t, fuel):
    n, head, stack = _unwind(t)
    while head[0] == "l":
        if not stack:
            n += 1
            head = head[1]
        else:
            fuel.spend()
            head = simul_subst(head[1], SubstMap((stack.pop(),), -1))
        while head[0] == "a":
            stack.append(head[2])
            head = head[1]
    return n, head, stack


@deep
def head_normalize_naive(t, fuel: int = DEFAULT_FUEL) -> DbTerm:
    """Contract head redexes until a head normal form is reached."""
    return _rebuild(*_hnf(_pure(t), _Fuel(fuel)))


@deep
def normalize_counted(t, fuel: int = DEFAULT_FUEL) -> tuple:
    """Normal form and the number of beta contractions it took."""
    budget = _Fuel(fuel)

    def go(u):
        n, head, stack = _hnf(u, budget)
        done = [go(a) for a in reversed(stack)]
        done.reverse()
        return _rebuild(n, head, done)

    return go(_pure(t)), budget.used


def normalize_naive(t, fuel: int = DEFAULT_FUEL) -> DbTerm:
    """Leftmost-outermost reduction to beta-normal form."""
    return normalize_counted(t, fuel)[0]


# -- randomized reading ------------------------------------------------------


def _positions(t):
    """Paths to every suspension where a reading rule applies, in preorder."""
    out = []
    todo = [(t, ())]
    while todo:
        u, path = todo.pop()
        u = deref(u)
        tag = u.tag
        if tag == APP:
            todo.append((u.b, path + ("arg",)))
            todo.append((u.a, path + ("fun",)))
        elif tag == LAM:
            todo.append((u.a, path + ("body",)))
        elif tag == SUSP:
            if deref(u.a).tag != SUSP:
                out.append(path)
            e, k = u.env, 0
            while e is not None:
                if e.term is not None:
                    todo.append((e.term, path + (k,)))
                e, k = e.next, k + 1
            todo.append((u.a, path + ("skel",)))
    return out


def _replace(u, path, new):
    if not path:
        return new
    u = deref(u)
    step, rest = path[0], path[1:]
    if step == "fun":
        return Term(APP, _replace(u.a, rest, new), u.b)
    if step == "arg":
        return Term(APP, u.a, _replace(u.b, rest, new))
    if step == "body":
        return Term(LAM, _replace(u.a, rest, new))
    if step == "skel":
        return Term(SUSP, _replace(u.a, rest, new), None, u.ol, u.nl, u.env)
    cells = []
    e = u.env
    for _ in range(step):
        cells.append(e)
        e = e.next
    env = terms.EnvCell(_replace(e.term, rest, new), e.level, e.next)
    for c in reversed(cells):
        env = terms.EnvCell(c.term, c.level, env)
    return Term(SUSP, u.a, None, u.ol, u.nl, env)


def _at(u, path):
    for step in path:
        u = deref(u)
        if step == "fun":
            u = u.a
        elif step == "arg":
            u = u.b
        elif step in ("body", "skel"):
            u = u.a
        else:
            u = terms.core.env_nth(u.env, step + 1).term
    return u


@deep
def randomized_read_out(t: Term, rng_seed, max_steps: int = 1_000_000) -> DbTerm:
    """Read out ``t`` by applying reading rules at random positions.

    Rules fire anywhere, including inside environment bindings.  Each step
    picks uniformly among the suspensions whose root admits a rule.
    """
    rng = random.Random(rng_seed)
    for _ in range(max_steps):
        spots = _positions(t)
        if not spots:
            return from_node(t)
        path = rng.choice(spots)
        _, result = rules.reading_step(_at(t, path))
        t = _replace(t, path, result)
    raise RuntimeError("reading did not terminate within %d steps" % max_steps)
