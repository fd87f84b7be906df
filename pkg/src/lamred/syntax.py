"""Surface syntax: parsing and printing.

Grammar::

    term  ::= binder term | app
    binder::= ("\\" | "λ") [ident "."]
    app   ::= atom atom*
    atom  ::= ident | "#" N | "(" term ")" | "[" term "," N "," N "," env "]"
    env   ::= "nil" | item "::" env
    item  ::= "@" N | "(" term "," N ")"

Lower-case identifiers are constants unless bound by a named binder, upper-case
identifiers are instantiatable variables.  A binder without a name is a de
Bruijn abstraction; named binders and ``#N`` cannot be mixed in one term.
Application associates to the left and binds tighter than abstraction.
"""

from __future__ import annotations

import re

from lamred import names, terms
from lamred._deep import deep
from lamred.terms import APP, BV, LAM, SUSP, Term, deref

__all__ = ["ParseError", "parse_term", "parse_db", "format_term", "format_env"]


class ParseError(ValueError):
    """Syntax error; ``line`` and ``column`` are 1-based."""

    def __init__(self, msg: str, pos: int, src: str | None = None):
        self.msg = msg
        self.pos = pos
        if src is None:
            self.line = self.column = None
            super().__init__("%s at offset %d" % (msg, pos))
            return
        self.line = src.count("\n", 0, pos) + 1
        self.column = pos - (src.rfind("\n", 0, pos) + 1) + 1
        super().__init__("%s at line %d, column %d" % (msg, self.line, self.column))


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>::|[\\λ.#()\[\],@]))")


def _tokenize(src: str):
    out = []
    pos = 0
    n = len(src)
    while True:
        m = _TOKEN.match(src, pos)
        if m is None:
            rest = src[pos:].strip()
            if not rest:
                break
            raise ParseError("unexpected character %r" % rest[0], n - len(src[pos:].lstrip()))
        if m.lastgroup is None:
            break
        kind = m.lastgroup
        text = m.group(kind)
        if kind == "sym" and text == "λ":
            text = "\\"
        out.append((kind, text, m.start(kind)))
        pos = m.end()
    out.append(("eof", "", n))
    return out


class _Parser:
    def __init__(self, src):
        self.toks = _tokenize(src)
        self.i = 0
        self.named = False
        self.indexed = False
        self.scope = []

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, text=None, kind=None):
        tok = self.peek()
        if (text is not None and tok[1] != text) or (kind is not None and tok[0] != kind):
            want = text if text is not None else kind
            raise ParseError("expected %r, found %r" % (want, tok[1] or "end of input"), tok[2])
        self.i += 1
        return tok

    def mode(self, named, pos):
        if named:
            self.named = True
        else:
            self.indexed = True
        if self.named and self.indexed:
            raise ParseError("named binders and de Bruijn indices cannot be mixed", pos)

    def term(self):
        tok = self.peek()
        if tok[1] == "\\":
            self.take()
            if self.peek()[0] == "ident" and self.peek(1)[1] == ".":
                name = self.take()[1]
                self.take(".")
                self.mode(True, tok[2])
                self.scope.append(name)
                try:
                    body = self.term()
                finally:
                    self.scope.pop()
                return names.Abs(name, body)
            self.mode(False, tok[2])
            return ("lam", self.term())
        return self.app()

    def app(self):
        t = self.atom()
        while self.peek()[0] == "ident" or self.peek()[1] in ("(", "#", "[", "\\"):
            if self.peek()[1] == "\\":
                t = ("app", t, self.term())
                break
            t = ("app", t, self.atom())
        return t

    def atom(self):
        tok = self.peek()
        kind, text, pos = tok
        if kind == "ident":
            self.take()
            if text in self.scope:
                return names.AbsVar(text)
            if text[0].isupper():
                return names.InstVar(text)
            return names.Const(text)
        if text == "#":
            self.take()
            n = int(self.take(kind="num")[1])
            if n < 1:
                raise ParseError("de Bruijn indices start at 1", pos)
            self.mode(False, pos)
            return ("bv", n)
        if text == "(":
            self.take()
            t = self.term()
            self.take(")")
            return t
        if text == "[":
            self.take()
            skel = self.term()
            self.take(",")
            ol = int(self.take(kind="num")[1])
            self.take(",")
            nl = int(self.take(kind="num")[1])
            self.take(",")
            env = self.env()
            self.take("]")
            self.mode(False, pos)
            return ("susp", skel, ol, nl, env)
        raise ParseError("unexpected %r" % (text or "end of input"), pos)

    def env(self):
        items = []
        while True:
            tok = self.peek()
            if tok[1] == "nil":
                self.take()
                return items
            if tok[1] == "@":
                self.take()
                items.append(("dummy", int(self.take(kind="num")[1])))
            elif tok[1] == "(":
                self.take()
                t = self.term()
                self.take(",")
                level = int(self.take(kind="num")[1])
                self.take(")")
                items.append(("binding", t, level))
            else:
                raise ParseError("expected an environment item or 'nil'", tok[2])
            self.take("::")


def _to_named(t):
    if isinstance(t, tuple):
        if t[0] != "app":
            raise TypeError(t)
        return names.App(_to_named(t[1]), _to_named(t[2]))
    if isinstance(t, names.Abs):
        return names.Abs(t.binder, _to_named(t.body))
    return t


def _to_node(t, meter):
    if isinstance(t, tuple):
        k = t[0]
        if k == "app":
            f = _to_node(t[1], meter)
            return terms.app(f, _to_node(t[2], meter), meter)
        if k == "lam":
            return terms.lam(_to_node(t[1], meter), meter)
        if k == "bv":
            return terms.bv(t[1], meter)
        if k == "susp":
            items = []
            for it in t[4]:
                if it[0] == "dummy":
                    items.append(terms.Dummy(it[1]))
                else:
                    items.append(terms.Binding(_to_node(it[1], meter), it[2]))
            return terms.susp(_to_node(t[1], meter), t[2], t[3], items, meter)
    if isinstance(t, names.Const):
        return terms.const(t.name, meter)
    if isinstance(t, names.InstVar):
        return terms.fvar(t.name, meter)
    raise TypeError("unexpected parse node %r" % (t,))


@deep
def parse_term(src: str, meter=None):
    """Parse ``src`` into a ``NamedTerm`` (named binders) or a graph term."""
    try:
        p = _Parser(src)
        raw = p.term()
        tok = p.peek()
        if tok[0] != "eof":
            raise ParseError("unexpected %r" % tok[1], tok[2])
    except ParseError as exc:
        raise ParseError(exc.msg, exc.pos, src) from None
    if p.named:
        return _to_named(raw)
    return _to_node(raw, meter)


def parse_db(src: str, meter=None) -> Term:
    """Parse ``src`` and translate named input to de Bruijn form."""
    t = parse_term(src, meter)
    if isinstance(t, Term):
        return t
    try:
        return names.to_debruijn(t, meter)
    except names.FreeVariableError as exc:
        raise ParseError(str(exc), 0) from None


# -- printing ----------------------------------------------------------------


@deep
def format_term(t: Term, unicode: bool = False) -> str:
    """Render ``t``.  The ASCII form uses minimal parentheses; the unicode
    form parenthesizes every application and abstraction."""
    out = []
    if unicode:
        _full(t, out)
    else:
        _min(t, out, "top")
    return "".join(out)


def format_env(env, unicode: bool = False) -> str:
    out = []
    _env(env, out, unicode)
    return "".join(out)


def _leaf(t, out):
    if t.tag == BV:
        out.append("#%d" % t.a)
    else:
        out.append(str(t.a))


def _susp(t, out, unicode):
    out.append("[")
    if unicode:
        _full(t.a, out)
    else:
        _min(t.a, out, "top")
    out.append(", %d, %d, " % (t.ol, t.nl))
    _env(t.env, out, unicode)
    out.append("]")


def _env(env, out, unicode):
    while env is not None:
        if env.term is None:
            out.append("@%d" % env.level)
        else:
            out.append("(")
            if isinstance(env.term, terms.core.Closure):
                out.append("<closure>")
            elif unicode:
                _full(env.term, out)
            else:
                _min(env.term, out, "top")
            out.append(",%d)" % env.level)
        out.append("::")
        env = env.next
    out.append("nil")


def _full(t, out):
    t = deref(t)
    tag = t.tag
    if tag == APP:
        out.append("(")
        _full(t.a, out)
        out.append(" ")
        _full(t.b, out)
        out.append(")")
    elif tag == LAM:
        out.append("(λ ")
        _full(t.a, out)
        out.append(")")
    elif tag == SUSP:
        _susp(t, out, True)
    else:
        _leaf(t, out)


def _min(t, out, ctx):
    """``ctx`` is "top" (anything goes), "fun" (left of an application) or
    "arg" (right of an application)."""
    t = deref(t)
    tag = t.tag
    if tag == APP:
        paren = ctx == "arg"
        if paren:
            out.append("(")
        _min(t.a, out, "fun")
        out.append(" ")
        _min(t.b, out, "arg")
        if paren:
            out.append(")")
    elif tag == LAM:
        paren = ctx != "top"
        if paren:
            out.append("(")
        out.append("\\ ")
        _min(t.a, out, "top")
        if paren:
            out.append(")")
    elif tag == SUSP:
        _susp(t, out, False)
    else:
        _leaf(t, out)
