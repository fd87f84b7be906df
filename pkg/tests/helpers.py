"""Small builders and hypothesis strategies shared by the test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from lamred import corpus, oracle, syntax, terms
from lamred.terms import Binding, Dummy

__all__ = ["node", "db", "Dummy", "Binding", "db_terms", "closed_db_terms", "wf_terms", "seeds"]

WORKED_TERM = "((\\ ((\\ \\ ((#1 #2) #3)) t2)) t3)"


def node(src: str) -> terms.Term:
    """A fresh graph term from surface syntax."""
    return syntax.parse_db(src)


def db(src: str) -> tuple:
    """The oracle form of surface syntax."""
    return oracle.from_node(syntax.parse_db(src))


def db_terms(max_depth: int = 5, binders: int = 0):
    """Pure de Bruijn terms (oracle tuples) whose free indices are <= ``binders``."""

    @st.composite
    def go(draw, depth, k):
        leaves = [st.sampled_from([("c", "a"), ("c", "b"), ("v", "X")])]
        if k:
            leaves.append(st.integers(1, k).map(lambda i: ("i", i)))
        if depth <= 1:
            return draw(st.one_of(leaves))
        choice = draw(st.integers(0, 4))
        if choice == 0:
            return draw(st.one_of(leaves))
        if choice == 1:
            return ("l", draw(go(depth - 1, k + 1)))
        if choice == 2:
            return ("a", ("l", draw(go(depth - 1, k + 1))), draw(go(depth - 1, k)))
        return ("a", draw(go(depth - 1, k)), draw(go(depth - 1, k)))

    return go(max_depth, binders)


def closed_db_terms(max_depth: int = 5):
    return db_terms(max_depth, 0)


seeds = st.integers(min_value=0, max_value=2**32 - 1)


def wf_terms(depth: int = 4):
    """Well-formed terms with suspensions, drawn through the seeded corpus."""
    return seeds.map(lambda s: corpus.random_wf_term(random.Random(s), depth))
