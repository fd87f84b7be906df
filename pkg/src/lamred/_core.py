"""Term graph, environments and the three head-normalization kernels.

Everything that runs inside a reduction lives in this one module so that the
whole hot path can be compiled as a single extension.  The same source is
imported as plain Python when the extension has not been built; see
``lamred.backend`` for how one of the two is picked.

Node layout (``Term``)::

    tag    a                 b         ol  nl  env
    CONST  name
    FVAR   name
    BV     index (>= 1)
    APP    function          argument
    LAM    body
    SUSP   skeleton                    ol  nl  env
    PTR    target

Environments are persistent cons lists of ``EnvCell`` with ``None`` as nil.
A cell whose ``term`` is ``None`` is a dummy ``@level``; anything else is a
binding ``(term, level)``.  In the implicit kernel the bound term is a
``Closure`` rather than a node.
"""

COMPILED = not __file__.endswith(".py")

CONST = 0
FVAR = 1
BV = 2
APP = 3
LAM = 4
SUSP = 5
PTR = 6

# The compiled build keeps the tags in C variables; publish them regardless.
globals().update(CONST=CONST, FVAR=FVAR, BV=BV, APP=APP, LAM=LAM, SUSP=SUSP, PTR=PTR)

KIND_NAMES = ("Const", "FreeVar", "BoundIdx", "App", "Lam", "Susp", "Indirection")


class NonTerminating(Exception):
    """Raised when a reduction runs out of beta-step fuel."""

    def __init__(self, steps):
        Exception.__init__(self, "no normal form within %d beta steps" % steps)
        self.steps = steps


class UnsupportedInput(ValueError):
    """A term outside the input class accepted by a kernel."""


class Term:
    __slots__ = ("tag", "a", "b", "ol", "nl", "env")

    def __init__(self, tag, a=None, b=None, ol=0, nl=0, env=None):
        self.tag = tag
        self.a = a
        self.b = b
        self.ol = ol
        self.nl = nl
        self.env = env

    def __repr__(self):
        return "<Term %s at %#x>" % (KIND_NAMES[self.tag], id(self))


class EnvCell:
    __slots__ = ("term", "level", "next")

    def __init__(self, term, level, next):
        self.term = term
        self.level = level
        self.next = next

    def __repr__(self):
        if self.term is None:
            return "<Dummy @%d>" % self.level
        return "<Binding level %d>" % self.level


class Closure:
    """A term paired with the suspension parameters it is to be read under."""

    __slots__ = ("term", "ol", "nl", "env")

    def __init__(self, term, ol, nl, env):
        self.term = term
        self.ol = ol
        self.nl = nl
        self.env = env


class Meter:
    """Allocation and step counters.  In-place updates are never counted."""

    __slots__ = ("consts", "fvars", "bvs", "apps", "lams", "susps", "ptrs",
                 "dummies", "bindings", "beta_steps", "reading_steps")

    def __init__(self):
        self.reset()

    def reset(self):
        self.consts = 0
        self.fvars = 0
        self.bvs = 0
        self.apps = 0
        self.lams = 0
        self.susps = 0
        self.ptrs = 0
        self.dummies = 0
        self.bindings = 0
        self.beta_steps = 0
        self.reading_steps = 0

    def node_counts(self):
        return (self.consts, self.fvars, self.bvs, self.apps, self.lams, self.susps, self.ptrs)

    def record(self, tag):
        if tag == CONST:
            self.consts += 1
        elif tag == FVAR:
            self.fvars += 1
        elif tag == BV:
            self.bvs += 1
        elif tag == APP:
            self.apps += 1
        elif tag == LAM:
            self.lams += 1
        elif tag == SUSP:
            self.susps += 1
        elif tag == PTR:
            self.ptrs += 1
        else:
            raise ValueError("unknown node kind %r" % (tag,))


# ---------------------------------------------------------------------------
# graph primitives


def deref(t):
    while t.tag == PTR:
        t = t.a
    return t


def assign(dst, src):
    """Turn ``dst`` into an indirection to ``deref(src)``."""
    target = deref(src)
    if target is dst:
        raise ValueError("assign would create a self-referential indirection")
    dst.tag = PTR
    dst.a = target
    dst.b = None
    dst.ol = 0
    dst.nl = 0
    dst.env = None


def env_nth(env, i):
    n = i
    while n > 1:
        if env is None:
            break
        env = env.next
        n -= 1
    if env is None or i < 1:
        raise IndexError("environment index %d out of range" % i)
    return env


def env_len(env):
    n = 0
    while env is not None:
        n += 1
        env = env.next
    return n


def _overwrite(t, tag, a, b, ol, nl, env):
    t.tag = tag
    t.a = a
    t.b = b
    t.ol = ol
    t.nl = nl
    t.env = env


# ---------------------------------------------------------------------------
# the reducer


class Reducer:
    """One reduction context: a meter, a beta-step budget and a trace hook.

    ``fuel`` bounds the number of beta contractions over the reducer's whole
    lifetime (a negative value means unbounded).  ``hook``, when given, is
    called as ``hook(rule_id, node)`` after every rule application; ``node``
    is the rewritten node for the destructive kernel and ``None`` where the
    rewrite has no node of its own.
    """

    def __init__(self, meter=None, fuel=-1, hook=None):
        self.meter = meter if meter is not None else Meter()
        self.fuel = fuel
        self.steps = 0
        self.hook = hook

    # -- allocation, all counted ------------------------------------------

    def mk_bv(self, i):
        self.meter.bvs += 1
        return Term(BV, i)

    def mk_app(self, f, x):
        self.meter.apps += 1
        return Term(APP, f, x)

    def mk_lam(self, body):
        self.meter.lams += 1
        return Term(LAM, body)

    def mk_susp(self, skel, ol, nl, env):
        self.meter.susps += 1
        return Term(SUSP, skel, None, ol, nl, env)

    def mk_dummy(self, level, env):
        self.meter.dummies += 1
        return EnvCell(None, level, env)

    def mk_binding(self, t, level, env):
        self.meter.bindings += 1
        return EnvCell(t, level, env)

    def _reading(self, rule, node):
        self.meter.reading_steps += 1
        if self.hook is not None:
            self.hook(rule, node)

    def _beta(self, rule, node):
        if self.fuel >= 0 and self.steps >= self.fuel:
            raise NonTerminating(self.steps)
        self.steps += 1
        self.meter.beta_steps += 1
        if self.hook is not None:
            self.hook(rule, node)

    # -- implicit: environment-based reduction with eager substitution ------

    def hn_eb(self, term, ol, nl, env, whnf):
        """Head-normalize ``term`` read under ``(ol, nl, env)``.

        Returns ``(t, ol', nl', env')``.  The quad is non-trivial only when a
        weak head normal form is requested and the head is an abstraction; in
        every other case it is ``(t, 0, 0, None)`` with ``t`` free of
        suspensions.  With a trivial input environment the input node is
        updated in place.
        """
        while term.tag == PTR:
            term = term.a
        tag = term.tag
        if tag == BV:
            if ol == 0 and nl == 0:
                return (term, 0, 0, None)
            i = term.a
            if i > ol:
                self._reading("r3", None)
                return (self.mk_bv(i - ol + nl), 0, 0, None)
            item = env_nth(env, i)
            level = item.level
            if item.term is None:
                self._reading("r4", None)
                return (self.mk_bv(nl - level), 0, 0, None)
            cl = item.term
            if level == nl:
                self._reading("r10", None)
                return self.hn_eb(cl.term, cl.ol, cl.nl, cl.env, whnf)
            self._reading("r12" if cl.ol == 0 and cl.nl == 0 else "r11", None)
            return self.hn_eb(cl.term, cl.ol, cl.nl + nl - level, cl.env, whnf)
        if tag == LAM:
            if whnf:
                return (term, ol, nl, env)
            if ol == 0 and nl == 0:
                self.hn_eb(term.a, 0, 0, None, False)
                return (term, 0, 0, None)
            self._reading("r7", None)
            r = self.hn_eb(term.a, ol + 1, nl + 1, self.mk_dummy(nl, env), False)
            return (self.mk_lam(r[0]), 0, 0, None)
        if tag == APP:
            t2 = term.b
            if ol != 0 or nl != 0:
                self._reading("r6", None)
            q = self.hn_eb(term.a, ol, nl, env, True)
            f = q[0]
            while f.tag == PTR:
                f = f.a
            if f.tag == LAM:
                fo = q[1]
                fl = q[2]
                self._beta("beta_s" if fo == 0 and fl == 0 else "beta_s'", None)
                cl = Closure(t2, ol, nl, env)
                s = self.hn_eb(f.a, fo + 1, fl, self.mk_binding(cl, fl, q[3]), whnf)
                if ol == 0 and nl == 0 and s[1] == 0 and s[2] == 0:
                    assign(term, s[0])
                return s
            if ol == 0 and nl == 0:
                assign(term, self.mk_app(f, t2))
                return (term, 0, 0, None)
            return (self.mk_app(f, self.subst(t2, ol, nl, env)), 0, 0, None)
        if tag == SUSP:
            raise UnsupportedInput("the implicit strategy takes terms without suspensions")
        return (term, 0, 0, None)

    def subst(self, term, ol, nl, env):
        """Eagerly carry out the substitution ``[term, ol, nl, env]``."""
        while term.tag == PTR:
            term = term.a
        tag = term.tag
        if tag == APP:
            self._reading("r6", None)
            f = self.subst(term.a, ol, nl, env)
            return self.mk_app(f, self.subst(term.b, ol, nl, env))
        if tag == LAM:
            self._reading("r7", None)
            return self.mk_lam(self.subst(term.a, ol + 1, nl + 1, self.mk_dummy(nl, env)))
        if tag == BV:
            i = term.a
            if i > ol:
                self._reading("r3", None)
                return self.mk_bv(i - ol + nl)
            item = env_nth(env, i)
            if item.term is None:
                self._reading("r4", None)
                return self.mk_bv(nl - item.level)
            cl = item.term
            k = nl + cl.nl - item.level
            if cl.ol == 0 and k == 0:
                self._reading("r10", None)
                return cl.term
            self._reading("r11", None)
            return self.subst(cl.term, cl.ol, k, cl.env)
        if tag == SUSP:
            raise UnsupportedInput("the implicit strategy takes terms without suspensions")
        if ol != 0 or nl != 0:
            self._reading("r1" if tag == CONST else "r2", None)
        return term

    # -- explicit: destructive rewriting with the reading rules ------------

    def read_root(self, t1):
        """Apply one reading rule at the root of the suspension node ``t1``.

        A suspension skeleton is read to a non-suspension first.
        """
        skel = t1.a
        while skel.tag == PTR:
            skel = skel.a
        while skel.tag == SUSP:
            self.lazy_read(skel)
            while skel.tag == PTR:
                skel = skel.a
        ol = t1.ol
        nl = t1.nl
        env = t1.env
        tag = skel.tag
        if tag == BV:
            i = skel.a
            if i > ol:
                _overwrite(t1, BV, i + nl - ol, None, 0, 0, None)
                self._reading("r3", t1)
                return
            item = env_nth(env, i)
            level = item.level
            if item.term is None:
                _overwrite(t1, BV, nl - level, None, 0, 0, None)
                self._reading("r4", t1)
                return
            t2 = item.term
            if nl == level:
                assign(t1, t2)
                self._reading("r10", t1)
                return
            while t2.tag == PTR:
                t2 = t2.a
            if t2.tag == SUSP:
                _overwrite(t1, SUSP, t2.a, None, t2.ol, t2.nl + nl - level, t2.env)
                self._reading("r11", t1)
            else:
                _overwrite(t1, SUSP, t2, None, 0, nl - level, None)
                self._reading("r12", t1)
            return
        if tag == APP:
            f = self.mk_susp(skel.a, ol, nl, env)
            x = self.mk_susp(skel.b, ol, nl, env)
            _overwrite(t1, APP, f, x, 0, 0, None)
            self._reading("r6", t1)
            return
        if tag == LAM:
            body = self.mk_susp(skel.a, ol + 1, nl + 1, self.mk_dummy(nl, env))
            _overwrite(t1, LAM, body, None, 0, 0, None)
            self._reading("r7", t1)
            return
        _overwrite(t1, tag, skel.a, None, 0, 0, None)
        self._reading("r1" if tag == CONST else "r2", t1)

    def lazy_read(self, t):
        """Read ``t`` in place until its root is no longer a suspension."""
        while t.tag == SUSP:
            self.read_root(t)

    def beta_contract(self, term, body, arg):
        b = body
        while b.tag == PTR:
            b = b.a
        if b.tag == SUSP:
            e = b.env
            if e is not None and e.term is None and b.nl == e.level + 1:
                nl1 = e.level
                _overwrite(term, SUSP, b.a, None, b.ol, nl1,
                           self.mk_binding(arg, nl1, e.next))
                self._beta("beta_s'", term)
                return
        _overwrite(term, SUSP, b, None, 1, 0, self.mk_binding(arg, 0, None))
        self._beta("beta_s", term)

    def hn_ex(self, term, whnf):
        """Head-normalize ``term`` in place with the explicit reading rules."""
        while True:
            tag = term.tag
            if tag == APP:
                t1 = term.a
                self.hn_ex(t1, True)
                f = t1
                while f.tag == PTR:
                    f = f.a
                if f.tag != LAM:
                    return
                self.beta_contract(term, f.a, term.b)
            elif tag == SUSP:
                self.lazy_read(term)
            elif tag == LAM:
                if whnf:
                    return
                term = term.a
            elif tag == PTR:
                t = term.a
                self.hn_ex(t, whnf)
                assign(term, t)
                return
            else:
                return

    # -- combined: environments, with suspensions committed lazily ----------

    def mk_explicit(self, term, q, ol, nl):
        t = q[0]
        qol = q[1]
        qnl = q[2]
        if qol == 0 and qnl == 0:
            assign(term, t)
            return (t, 0, 0, None)
        if ol == 0 and nl == 0:
            assign(term, self.mk_susp(t, qol, qnl, q[3]))
            return q
        f = t
        while f.tag == PTR:
            f = f.a
        if f.tag != LAM:
            raise UnsupportedInput("non-trivial head quad without an abstraction")
        body = self.mk_susp(f.a, qol + 1, qnl + 1, self.mk_dummy(qnl, q[3]))
        assign(term, self.mk_lam(body))
        return (term, 0, 0, None)

    def hn_co(self, term, ol, nl, env, whnf):
        """Like ``hn_eb`` but arguments become suspensions, not copies."""
        while term.tag == PTR:
            term = term.a
        tag = term.tag
        if tag == BV:
            if ol == 0 and nl == 0:
                return (term, 0, 0, None)
            i = term.a
            if i > ol:
                self._reading("r3", None)
                return (self.mk_bv(i - ol + nl), 0, 0, None)
            item = env_nth(env, i)
            level = item.level
            if item.term is None:
                self._reading("r4", None)
                return (self.mk_bv(nl - level), 0, 0, None)
            t = item.term
            if nl == level:
                self._reading("r10", None)
                return self.hn_co(t, 0, 0, None, whnf)
            while t.tag == PTR:
                t = t.a
            if t.tag == SUSP:
                self._reading("r11", None)
                return self.hn_co(t.a, t.ol, t.nl + nl - level, t.env, whnf)
            self._reading("r12", None)
            return self.hn_co(t, 0, nl - level, None, whnf)
        if tag == LAM:
            if whnf:
                return (term, ol, nl, env)
            if ol == 0 and nl == 0:
                self.hn_co(term.a, 0, 0, None, False)
                return (term, 0, 0, None)
            self._reading("r7", None)
            r = self.hn_co(term.a, ol + 1, nl + 1, self.mk_dummy(nl, env), False)
            return (self.mk_lam(r[0]), 0, 0, None)
        if tag == APP:
            t2 = term.b
            if ol != 0 or nl != 0:
                self._reading("r6", None)
            q = self.hn_co(term.a, ol, nl, env, True)
            f = q[0]
            while f.tag == PTR:
                f = f.a
            if f.tag == LAM:
                fo = q[1]
                fl = q[2]
                self._beta("beta_s" if fo == 0 and fl == 0 else "beta_s'", None)
                if ol == 0 and nl == 0:
                    arg = t2
                else:
                    arg = self.mk_susp(t2, ol, nl, env)
                s = self.hn_co(f.a, fo + 1, fl, self.mk_binding(arg, fl, q[3]), whnf)
                if ol == 0 and nl == 0 and s[1] == 0 and s[2] == 0:
                    assign(term, s[0])
                return s
            if ol == 0 and nl == 0:
                assign(term, self.mk_app(f, t2))
                return (term, 0, 0, None)
            return (self.mk_app(f, self.mk_susp(t2, ol, nl, env)), 0, 0, None)
        if tag == SUSP:
            q = self.hn_co(term.a, term.ol, term.nl, term.env, whnf)
            s = self.mk_explicit(term, q, ol, nl)
            if ol == 0 and nl == 0:
                return s
            return self.hn_co(term, ol, nl, env, whnf)
        if ol != 0 or nl != 0:
            self._reading("r1" if tag == CONST else "r2", None)
        return (term, 0, 0, None)

    # -- entry points ------------------------------------------------------

    def head_norm(self, t, strategy, whnf):
        """Head-normalize ``t`` in place; ``t`` then dereferences to the result.

        ``strategy`` is 0 (implicit), 1 (explicit) or 2 (combined).
        """
        if strategy == 1:
            self.hn_ex(t, whnf)
            return
        if strategy == 0:
            q = self.hn_eb(t, 0, 0, None, whnf)
        elif strategy == 2:
            q = self.hn_co(t, 0, 0, None, whnf)
        else:
            raise ValueError("unknown strategy %r" % (strategy,))
        r = q[0]
        if q[1] != 0 or q[2] != 0:
            f = r
            while f.tag == PTR:
                f = f.a
            if strategy == 0:
                r = self.subst(f, q[1], q[2], q[3])
            else:
                body = self.mk_susp(f.a, q[1] + 1, q[2] + 1, self.mk_dummy(q[2], q[3]))
                r = self.mk_lam(body)
        if deref(t) is not deref(r):
            assign(t, r)

    def normalize(self, t, strategy):
        """Reduce ``t`` to beta-normal form in place, leftmost-outermost."""
        todo = [t]
        while todo:
            node = todo.pop()
            self.head_norm(node, strategy, False)
            h = node
            while h.tag == PTR:
                h = h.a
            while h.tag == LAM:
                h = h.a
                while h.tag == PTR:
                    h = h.a
            while h.tag == APP:
                todo.append(h.b)
                h = h.a
                while h.tag == PTR:
                    h = h.a
            if h.tag == SUSP:
                raise UnsupportedInput("head normal form with a suspended head")
