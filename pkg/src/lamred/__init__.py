"""Head normalization of lambda terms with explicit substitutions.

Three reduction procedures over a shared term graph (implicit, explicit and
combined use of suspensions), a naive de Bruijn oracle to check them against,
and an allocation meter to compare them.
"""

from lamred.backend import NAME as BACKEND
from lamred.strategies import (
    Form,
    Strategy,
    head_norm,
    normalize_full,
)
from lamred.syntax import format_term, parse_db, parse_term
from lamred.terms import NonTerminating, UnsupportedInput

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Form", "Strategy", "NonTerminating", "UnsupportedInput",
    "head_norm", "normalize_full", "parse_term", "parse_db", "format_term",
]
