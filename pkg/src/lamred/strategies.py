"""The three head-normalization procedures and a full-normalization driver.

* implicit: environments carry closures and arguments are substituted
  eagerly once a rigid head shows up, so no suspension ever reaches the heap.
* explicit: suspensions live in the heap and are rewritten in place, one
  reading rule at a time, as far as the head needs.
* combined: environments as in the implicit procedure, but arguments are
  wrapped in a single suspension instead of being copied.

All entry points update their input in place; afterwards the input node
dereferences to the result.  The kernels themselves are in ``lamred._core``.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Optional

from lamred import terms
from lamred._deep import deep
from lamred.backend import core
from lamred.terms import Meter, NonTerminating, Term, UnsupportedInput

__all__ = [
    "Strategy", "Form", "HnQuad", "Closure", "NonTerminating", "UnsupportedInput",
    "DEFAULT_FUEL", "closure_env", "subst_implicit", "lazy_read", "read_root",
    "head_norm", "head_norm_implicit", "head_norm_explicit", "head_norm_combined",
    "normalize_full", "hn_eb", "hn_co", "is_hnf_shape",
]

DEFAULT_FUEL = 100_000

Closure = core.Closure


class Strategy(enum.Enum):
    IMPLICIT = "implicit"
    EXPLICIT = "explicit"
    COMBINED = "combined"

    @property
    def code(self) -> int:
        return _CODES[self]


_CODES = {Strategy.IMPLICIT: 0, Strategy.EXPLICIT: 1, Strategy.COMBINED: 2}


class Form(enum.Enum):
    HNF = "hnf"
    WHNF = "whnf"


class HnQuad(NamedTuple):
    term: Term
    ol: int
    nl: int
    env: object

    @property
    def trivial(self) -> bool:
        return self.ol == 0 and self.nl == 0 and self.env is None


def _strategy(s) -> Strategy:
    return s if isinstance(s, Strategy) else Strategy(s)


def _form(f) -> Form:
    return f if isinstance(f, Form) else Form(f)


def _reducer(meter, fuel, hook=None):
    return core.Reducer(meter, -1 if fuel is None else fuel, hook)


def closure_env(items, meter=None):
    """An implicit-strategy environment from ``terms.Dummy`` and
    ``(term, ol, nl, env, level)`` closure bindings, head first."""
    env = None
    for item in reversed(list(items)):
        if isinstance(item, terms.Dummy):
            if meter is not None:
                meter.dummies += 1
            env = terms.EnvCell(None, item.level, env)
        else:
            t, ol, nl, cenv, level = item
            if meter is not None:
                meter.bindings += 1
            env = terms.EnvCell(Closure(t, ol, nl, cenv), level, env)
    return env


@deep
def subst_implicit(t: Term, ol: int, nl: int, env, meter: Optional[Meter] = None) -> Term:
    """The pure term underlying ``[t, ol, nl, env]``; ``env`` holds closures."""
    return _reducer(meter, None).subst(t, ol, nl, env)


@deep
def lazy_read(t: Term, meter: Optional[Meter] = None, hook=None) -> None:
    """Rewrite ``t`` in place until its root is not a suspension."""
    _reducer(meter, None, hook).lazy_read(t)


@deep
def read_root(t: Term, meter: Optional[Meter] = None, hook=None) -> None:
    """Apply one reading rule at the suspension ``t``, in place.

    A skeleton that is itself a suspension is read first.
    """
    if terms.deref(t).tag != terms.SUSP:
        raise ValueError("read_root needs a suspension")
    _reducer(meter, None, hook).read_root(terms.deref(t))


@deep
def hn_eb(t: Term, ol: int, nl: int, env, whnf: bool, meter=None, fuel=DEFAULT_FUEL) -> HnQuad:
    """One call of the implicit kernel, exposing its quadruple."""
    return HnQuad(*_reducer(meter, fuel).hn_eb(t, ol, nl, env, whnf))


@deep
def hn_co(t: Term, ol: int, nl: int, env, whnf: bool, meter=None, fuel=DEFAULT_FUEL) -> HnQuad:
    """One call of the combined kernel, exposing its quadruple."""
    return HnQuad(*_reducer(meter, fuel).hn_co(t, ol, nl, env, whnf))


@deep
def head_norm(t: Term, strategy, form=Form.HNF, fuel: Optional[int] = DEFAULT_FUEL,
              meter: Optional[Meter] = None, hook=None) -> None:
    """Head-normalize ``t`` in place.  ``fuel`` caps beta steps (``None``: no cap)."""
    strategy = _strategy(strategy)
    whnf = _form(form) is Form.WHNF
    _reducer(meter, fuel, hook).head_norm(t, strategy.code, whnf)


def head_norm_implicit(t, form=Form.HNF, fuel=DEFAULT_FUEL, meter=None, hook=None):
    head_norm(t, Strategy.IMPLICIT, form, fuel, meter, hook)


def head_norm_explicit(t, form=Form.HNF, fuel=DEFAULT_FUEL, meter=None, hook=None):
    head_norm(t, Strategy.EXPLICIT, form, fuel, meter, hook)


def head_norm_combined(t, form=Form.HNF, fuel=DEFAULT_FUEL, meter=None, hook=None):
    head_norm(t, Strategy.COMBINED, form, fuel, meter, hook)


@deep
def normalize_full(t: Term, strategy, fuel: Optional[int] = DEFAULT_FUEL,
                   meter: Optional[Meter] = None, hook=None) -> None:
    """Reduce ``t`` in place to its beta-normal form.

    Head normal forms are computed outermost first, then the driver descends
    into the arguments left to right.  ``fuel`` is shared by the whole run.
    """
    _reducer(meter, fuel, hook).normalize(t, _strategy(strategy).code)


def is_hnf_shape(t: Term) -> bool:
    """Whether ``t`` is ``lambda^n (h a1 ... am)`` with a rigid head ``h``."""
    t = terms.deref(t)
    while t.tag == terms.LAM:
        t = terms.deref(t.a)
    while t.tag == terms.APP:
        t = terms.deref(t.a)
    return t.tag in (terms.CONST, terms.FVAR, terms.BV)
