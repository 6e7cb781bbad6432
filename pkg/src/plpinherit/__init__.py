"""Probabilistic logic programming under inheritance with overriding.

Programs are finite sets of interval-valued conditional constraints
``(psi|phi)[l, u]``. Queries are answered under classical 0- and
1-entailment and under the nonmonotonic z- and lex-entailment, all computed
exactly with rational linear programming over possible worlds.

>>> from plpinherit import parse_program, parse_query, answer_query
>>> p = parse_program("(b(X)|p(X))[1,1]. (l(X)|b(X))[0.95,1].")
>>> q = parse_query("?(l(tweety)|p(tweety))[R,S].")
>>> [str(iv) for _, iv in answer_query(p, q, "lex").tight]
['[19/20, 1]']
"""

from .defaults import (
    Answer, Reasoner, Semantics, ZPartition, answer_query, entails_negated_classical,
    is_consistent, s_consequence, tight_consequence_disjunctive_evidence,
    tight_s_consequence_nonground,
)
from .errors import (
    GroundingError, InconsistentProgramError, OracleCapError, ParseError, PLPError,
    UnboundedError, WorldCapError,
)
from .logical import EMPTY, Interval
from .syntax import (
    ConditionalConstraint, Program, Query, classify, parse_constraint, parse_formula,
    parse_program, parse_query, render,
)

__version__ = "0.1.0"

__all__ = [
    "Answer", "ConditionalConstraint", "EMPTY", "GroundingError", "InconsistentProgramError",
    "Interval", "OracleCapError", "PLPError", "ParseError", "Program", "Query", "Reasoner",
    "Semantics", "UnboundedError", "WorldCapError", "ZPartition", "answer_query", "classify",
    "entails_negated_classical", "is_consistent", "parse_constraint", "parse_formula",
    "parse_program", "parse_query", "render", "s_consequence",
    "tight_consequence_disjunctive_evidence", "tight_s_consequence_nonground",
]
