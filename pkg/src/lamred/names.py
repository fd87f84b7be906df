"""Name-carrying lambda terms and their translation to de Bruijn form."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from lamred import terms

__all__ = [
    "Const", "AbsVar", "InstVar", "App", "Abs", "NamedTerm",
    "FreeVariableError", "free_vars", "subst_named", "fresh_name",
    "to_debruijn", "alpha_eq", "has_head_redex", "contract_head_named",
]


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class AbsVar:
    name: str


@dataclass(frozen=True)
class InstVar:
    name: str


@dataclass(frozen=True)
class App:
    fun: "NamedTerm"
    arg: "NamedTerm"


@dataclass(frozen=True)
class Abs:
    binder: str
    body: "NamedTerm"


NamedTerm = Union[Const, AbsVar, InstVar, App, Abs]


class FreeVariableError(ValueError):
    def __init__(self, name: str):
        super().__init__("free abstractable variable %r" % name)
        self.name = name


def free_vars(t: NamedTerm) -> set[str]:
    if isinstance(t, AbsVar):
        return {t.name}
    if isinstance(t, App):
        return free_vars(t.fun) | free_vars(t.arg)
    if isinstance(t, Abs):
        return free_vars(t.body) - {t.binder}
    return set()


_SUFFIX = re.compile(r"^(.*?)(\d*)$")


def fresh_name(base: str, avoid: set[str]) -> str:
    """``base`` with a numeric suffix bumped until it is not in ``avoid``."""
    stem, digits = _SUFFIX.match(base).groups()
    n = int(digits) + 1 if digits else 1
    while True:
        name = "%s%d" % (stem, n)
        if name not in avoid:
            return name
        n += 1


def subst_named(t: NamedTerm, x: str, s: NamedTerm) -> NamedTerm:
    """Capture-avoiding ``t[x := s]``."""
    if isinstance(t, AbsVar):
        return s if t.name == x else t
    if isinstance(t, App):
        return App(subst_named(t.fun, x, s), subst_named(t.arg, x, s))
    if isinstance(t, Abs):
        y = t.binder
        if y == x:
            return t
        body_fv = free_vars(t.body)
        if x not in body_fv:
            return t
        s_fv = free_vars(s)
        if y not in s_fv:
            return Abs(y, subst_named(t.body, x, s))
        z = fresh_name(y, body_fv | s_fv | {x})
        renamed = subst_named(t.body, y, AbsVar(z))
        return Abs(z, subst_named(renamed, x, s))
    return t


def to_debruijn(t: NamedTerm, meter=None) -> terms.Term:
    """Translate a closed named term; the innermost binder of a name wins."""

    def xi(u, scope):
        if isinstance(u, Const):
            return terms.const(u.name, meter)
        if isinstance(u, InstVar):
            return terms.fvar(u.name, meter)
        if isinstance(u, AbsVar):
            for i, name in enumerate(reversed(scope), 1):
                if name == u.name:
                    return terms.bv(i, meter)
            raise FreeVariableError(u.name)
        if isinstance(u, App):
            f = xi(u.fun, scope)
            return terms.app(f, xi(u.arg, scope), meter)
        if isinstance(u, Abs):
            scope.append(u.binder)
            try:
                body = xi(u.body, scope)
            finally:
                scope.pop()
            return terms.lam(body, meter)
        raise TypeError("not a named term: %r" % (u,))

    return xi(t, [])


def alpha_eq(t: NamedTerm, s: NamedTerm) -> bool:
    return terms.term_eq(to_debruijn(t), to_debruijn(s))


def has_head_redex(t: NamedTerm) -> bool:
    while True:
        if isinstance(t, App):
            if isinstance(t.fun, Abs):
                return True
            t = t.fun
        elif isinstance(t, Abs):
            t = t.body
        else:
            return False


def contract_head_named(t: NamedTerm) -> NamedTerm:
    """Contract the head redex of ``t``; ``t`` must have one."""
    if isinstance(t, App):
        if isinstance(t.fun, Abs):
            return subst_named(t.fun.body, t.fun.binder, t.arg)
        return App(contract_head_named(t.fun), t.arg)
    if isinstance(t, Abs):
        return Abs(t.binder, contract_head_named(t.body))
    raise ValueError("term has no head redex")
