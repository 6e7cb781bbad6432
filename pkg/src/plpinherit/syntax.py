"""Formulas, conditional constraints, programs and queries, with a text syntax.

Concrete syntax (full EBNF in ``docs/grammar.ebnf``)::

    (b(X) | p(X))[1, 1].          % strict: all penguins are birds
    (l(X) | b(X))[0.95, 1].       % default: birds have legs
    ?(l(tweety) | p(tweety))[L, U].

Lowercase identifiers are predicates and constants, uppercase identifiers are
variables, ``true``/``false`` are the propositional constants. Connectives are
``~`` (not), ``&`` (and), ``;`` (or) and ``->`` (implies); the last two are
desugared into ``~``/``&`` while parsing. Bounds are decimals or ``a/b``
fractions and are always stored as exact :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Union

from .errors import ParseError

__all__ = [
    "Const", "Var", "Term", "Formula", "Top", "Bottom", "Atom", "Not", "And",
    "TOP", "BOTTOM", "disj", "implies", "conj",
    "ConditionalConstraint", "Program", "Query", "NumericBounds", "BoundVariables",
    "Kind", "classify", "parse_program", "parse_query", "parse_formula",
    "parse_constraint", "render", "atoms_of", "variables_of", "predicate_signatures",
]


# --------------------------------------------------------------------------
# terms and formulas
# --------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True, order=True)
class Var:
    name: str

    def __str__(self):
        return self.name


Term = Union[Const, Var]


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    @property
    def is_ground(self):
        return all(isinstance(t, Const) for t in self.args)

    def sort_key(self):
        return (self.predicate, tuple(t.name for t in self.args))


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


Formula = Union[Top, Bottom, Atom, Not, And]

TOP = Top()
BOTTOM = Bottom()


def disj(f, g):
    """``f ∨ g`` as ``¬(¬f ∧ ¬g)``."""
    return Not(And(Not(f), Not(g)))


def implies(f, g):
    """``f → g`` as ``¬(f ∧ ¬g)``."""
    return Not(And(f, Not(g)))


def conj(*fs):
    """Left-nested conjunction; ``conj()`` is ``true``."""
    if not fs:
        return TOP
    out = fs[0]
    for f in fs[1:]:
        out = And(out, f)
    return out


def iter_atoms(f) -> Iterator[Atom]:
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, Atom):
            yield g
        elif isinstance(g, Not):
            stack.append(g.arg)
        elif isinstance(g, And):
            stack.append(g.right)
            stack.append(g.left)


def _formulas_of(x):
    if isinstance(x, (ConditionalConstraint, Query)):
        return (x.consequent, x.antecedent)
    if isinstance(x, Program):
        return tuple(f for c in x for f in (c.consequent, c.antecedent))
    return (x,)


def atoms_of(*items) -> set:
    """All atoms occurring in formulas, constraints, queries or programs."""
    out = set()
    for item in items:
        for f in _formulas_of(item):
            out.update(iter_atoms(f))
    return out


def variables_of(*items) -> set:
    return {t.name for a in atoms_of(*items) for t in a.args if isinstance(t, Var)}


def predicate_signatures(*items) -> dict:
    """Map predicate name -> arity; raises ParseError on inconsistent arity."""
    sig = {}
    for a in sorted(atoms_of(*items), key=Atom.sort_key):
        known = sig.setdefault(a.predicate, len(a.args))
        if known != len(a.args):
            raise ParseError(
                f"predicate {a.predicate!r} used with arity {known} and {len(a.args)}")
    return sig


# --------------------------------------------------------------------------
# constraints, programs, queries
# --------------------------------------------------------------------------

class Kind(enum.Enum):
    CLASSICAL = "classical"
    DEFAULT = "default"


@dataclass(frozen=True)
class ConditionalConstraint:
    """``(consequent | antecedent)[lower, upper]``."""

    consequent: Formula
    antecedent: Formula
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))
        for b in (self.lower, self.upper):
            if not 0 <= b <= 1:
                raise ValueError(f"bound {b} outside [0, 1]")

    @property
    def is_ground(self):
        return all(a.is_ground for a in atoms_of(self))

    def __str__(self):
        return render(self)


def classify(c: ConditionalConstraint) -> Kind:
    if (c.lower, c.upper) in ((1, 1), (0, 0)):
        return Kind.CLASSICAL
    return Kind.DEFAULT


class Program(tuple):
    """An ordered, duplicate-free tuple of conditional constraints with l <= u."""

    def __new__(cls, constraints=()):
        seen = {}
        for c in constraints:
            if c.lower > c.upper:
                raise ValueError(f"program member {render(c)} has lower > upper")
            seen.setdefault(c, None)
        return super().__new__(cls, seen)

    def __repr__(self):
        return f"Program({list(self)!r})"


@dataclass(frozen=True)
class NumericBounds:
    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))


@dataclass(frozen=True)
class BoundVariables:
    lower: str
    upper: str

    def __post_init__(self):
        if self.lower == self.upper:
            raise ValueError("bound variables of a query must be distinct")


@dataclass(frozen=True)
class Query:
    """``∃(consequent | antecedent)[s, t]``."""

    consequent: Formula
    antecedent: Formula
    bounds: Union[NumericBounds, BoundVariables]

    @property
    def is_object_ground(self):
        return not variables_of(self)

    def __str__(self):
        return render(self)


# --------------------------------------------------------------------------
# tokenizer
# --------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+|%[^\n]*)
  | (?P<number>\d+/\d+|\d+(?:\.\d+)?|\.\d+)
  | (?P<arrow>->)
  | (?P<lident>[a-z][A-Za-z0-9_]*)
  | (?P<uident>[A-Z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],.|~&;?])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text):
    pos, line, line_start = 0, 1, 0
    out = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tkind = m.group() if kind == "punct" else kind
            out.append(_Tok(tkind, m.group(), line, pos - line_start + 1))
        nl = m.group().count("\n")
        if nl:
            line += nl
            line_start = pos + m.group().rindex("\n") + 1
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def take(self, kind=None):
        tok = self.tok
        if kind is not None and tok.kind != kind:
            shown = tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {shown!r}")
        self.i += 1
        return tok

    def at(self, kind):
        return self.tok.kind == kind

    # formula := impl ; impl := disj ['->' impl] ; disj := conj {';' conj} ;
    # conj := unary {'&' unary} ; unary := '~' unary | primary
    def formula(self):
        left = self.disjunction()
        if self.at("arrow"):
            self.take()
            return implies(left, self.formula())
        return left

    def disjunction(self):
        f = self.conjunction()
        while self.at(";"):
            self.take()
            f = disj(f, self.conjunction())
        return f

    def conjunction(self):
        f = self.unary()
        while self.at("&"):
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self):
        if self.at("~"):
            self.take()
            return Not(self.unary())
        return self.primary()

    def primary(self):
        tok = self.tok
        if tok.kind == "(":
            self.take()
            f = self.formula()
            self.take(")")
            return f
        if tok.kind == "lident":
            self.take()
            if tok.text == "true":
                return TOP
            if tok.text == "false":
                return BOTTOM
            args = ()
            if self.at("("):
                self.take()
                args = [self.term()]
                while self.at(","):
                    self.take()
                    args.append(self.term())
                self.take(")")
            return Atom(tok.text, tuple(args))
        raise self.error(f"expected a formula, found {tok.text or 'end of input'!r}")

    def term(self):
        tok = self.tok
        if tok.kind == "lident" and tok.text not in ("true", "false"):
            self.take()
            return Const(tok.text)
        if tok.kind == "uident":
            self.take()
            return Var(tok.text)
        raise self.error(f"expected a constant or variable, found {tok.text!r}")

    def conditional(self):
        self.take("(")
        psi = self.formula()
        if self.at("|"):
            self.take()
            phi = self.formula()
        else:
            phi = TOP
        self.take(")")
        return psi, phi

    def number(self):
        tok = self.take("number")
        value = Fraction(tok.text)
        if not 0 <= value <= 1:
            raise self.error(f"bound {tok.text} outside [0, 1]", tok)
        return value

    def constraint(self):
        start = self.tok
        psi, phi = self.conditional()
        self.take("[")
        lo = self.number()
        self.take(",")
        hi = self.number()
        self.take("]")
        self.take(".")
        if lo > hi:
            raise self.error(f"lower bound {lo} exceeds upper bound {hi}", start)
        return ConditionalConstraint(psi, phi, lo, hi)

    def query(self):
        start = self.take("?")
        beta, alpha = self.conditional()
        self.take("[")
        if self.at("uident"):
            x = self.take().text
            self.take(",")
            y = self.take("uident").text
            if x == y:
                raise self.error("query bound variables must be distinct", start)
            bounds = BoundVariables(x, y)
        else:
            lo = self.number()
            self.take(",")
            hi = self.number()
            bounds = NumericBounds(lo, hi)
        self.take("]")
        self.take(".")
        return Query(beta, alpha, bounds)


def parse_program(text: str) -> Program:
    p = _Parser(text)
    members = []
    while not p.at("eof"):
        members.append(p.constraint())
    prog = Program(members)
    predicate_signatures(prog)
    return prog


def parse_query(text: str) -> Query:
    p = _Parser(text.strip())
    q = p.query()
    p.take("eof")
    predicate_signatures(q)
    return q


def parse_constraint(text: str) -> ConditionalConstraint:
    text = text.strip()
    if not text.endswith("."):
        text += "."
    p = _Parser(text)
    c = p.constraint()
    p.take("eof")
    return c


def parse_formula(text: str):
    p = _Parser(text)
    f = p.formula()
    p.take("eof")
    return f


# --------------------------------------------------------------------------
# printer
# --------------------------------------------------------------------------

def _render_formula(f, ctx="top"):
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Atom):
        if not f.args:
            return f.predicate
        return f"{f.predicate}({','.join(t.name for t in f.args)})"
    if isinstance(f, Not):
        return "~" + _render_formula(f.arg, "unary")
    if isinstance(f, And):
        s = f"{_render_formula(f.left, 'and-left')} & {_render_formula(f.right, 'unary')}"
        return f"({s})" if ctx == "unary" else s
    raise TypeError(f"not a formula: {f!r}")


def _frac(x: Fraction) -> str:
    return str(x)


def _dec(x: Fraction) -> str:
    s = f"{float(x):.6g}"
    return s


def render(x, comments: bool = False) -> str:
    """Render a formula, constraint, query or program in the concrete syntax.

    With ``comments=True`` non-integral bounds get a trailing ``%`` comment
    holding their decimal approximation.
    """
    if isinstance(x, Program):
        return "".join(render(c, comments) + "\n" for c in x)
    if isinstance(x, ConditionalConstraint):
        s = (f"({_render_formula(x.consequent)}|{_render_formula(x.antecedent)})"
             f"[{_frac(x.lower)}, {_frac(x.upper)}].")
        if comments and (x.lower.denominator != 1 or x.upper.denominator != 1):
            s += f"  % [{_dec(x.lower)}, {_dec(x.upper)}]"
        return s
    if isinstance(x, Query):
        b = x.bounds
        if isinstance(b, BoundVariables):
            slot = f"{b.lower}, {b.upper}"
        else:
            slot = f"{_frac(b.lower)}, {_frac(b.upper)}"
        return f"?({_render_formula(x.consequent)}|{_render_formula(x.antecedent)})[{slot}]."
    return _render_formula(x)
