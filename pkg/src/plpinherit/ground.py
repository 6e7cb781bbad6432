"""Herbrand universe/base, grounding, and the strict/defeasible split."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import GroundingError, ParseError, WorldCapError
from .syntax import (
    And, Atom, ConditionalConstraint, Const, Kind, Not, Program, Query, Var,
    atoms_of, classify, predicate_signatures, variables_of,
)

__all__ = [
    "HerbrandBase", "GroundTheory", "herbrand_universe", "herbrand_base",
    "ground_program", "split_theory", "ground_instances_of_query", "substitute",
]


def herbrand_universe(program: Program, query: Query | None = None, extra=()) -> frozenset:
    """Constants occurring in the program, the query and any ``extra`` items.

    An empty universe is fine for propositional input but not when some
    object variable needs instantiating.
    """
    items = [program] + ([query] if query is not None else []) + list(extra)
    consts = frozenset(t.name for a in atoms_of(*items) for t in a.args
                       if isinstance(t, Const))
    if not consts and variables_of(*items):
        raise GroundingError(
            "object variables occur but there are no constants to ground them with")
    return consts


@dataclass(frozen=True)
class HerbrandBase:
    atoms: tuple

    def __post_init__(self):
        object.__setattr__(self, "index", {a: i for i, a in enumerate(self.atoms)})

    def __len__(self):
        return len(self.atoms)

    def __iter__(self):
        return iter(self.atoms)

    def __contains__(self, atom):
        return atom in self.index


def herbrand_base(universe, signatures: dict, *, restrict: bool = True,
                  occurring=(), cap: int | None = None) -> HerbrandBase:
    """Ground atoms in deterministic (predicate, argument tuple) order.

    With ``restrict`` (the default) only atoms that occur in ``occurring``
    (ground constraints, queries or formulas) are kept; otherwise every atom
    over ``signatures`` and ``universe`` is generated.
    """
    if restrict:
        atoms = {a for a in atoms_of(*occurring) if a.is_ground}
    else:
        consts = sorted(universe)
        atoms = set()
        for pred, arity in signatures.items():
            for args in itertools.product(consts, repeat=arity):
                atoms.add(Atom(pred, tuple(Const(c) for c in args)))
    if not atoms:
        raise GroundingError("the Herbrand base is empty")
    if cap is not None and len(atoms) > cap:
        raise WorldCapError(
            f"{len(atoms)} ground atoms would need 2^{len(atoms)} worlds; "
            f"the cap is {cap} atoms (raise it with --max-atoms)")
    return HerbrandBase(tuple(sorted(atoms, key=Atom.sort_key)))


def substitute(f, theta: dict):
    if isinstance(f, Atom):
        if not f.args:
            return f
        return Atom(f.predicate, tuple(Const(theta[t.name]) if isinstance(t, Var) else t
                                       for t in f.args))
    if isinstance(f, Not):
        return Not(substitute(f.arg, theta))
    if isinstance(f, And):
        return And(substitute(f.left, theta), substitute(f.right, theta))
    return f


def _substitutions(names, universe):
    names = sorted(names)
    consts = sorted(universe)
    for combo in itertools.product(consts, repeat=len(names)):
        yield dict(zip(names, combo))


def ground_program(program: Program, universe) -> tuple:
    out = {}
    for c in program:
        names = variables_of(c)
        if names and not universe:
            raise GroundingError("cannot ground a non-ground program over an empty universe")
        for theta in _substitutions(names, universe):
            g = ConditionalConstraint(substitute(c.consequent, theta),
                                      substitute(c.antecedent, theta), c.lower, c.upper)
            out.setdefault(g, None)
    return tuple(out)


@dataclass(frozen=True)
class GroundTheory:
    strict: tuple
    defaults: tuple

    def __iter__(self):
        yield self.strict
        yield self.defaults


def split_theory(constraints) -> GroundTheory:
    strict, defaults = [], []
    for c in constraints:
        (strict if classify(c) is Kind.CLASSICAL else defaults).append(c)
    return GroundTheory(tuple(strict), tuple(defaults))


def ground_instances_of_query(query: Query, universe) -> list:
    """``(theta, ground query)`` pairs in deterministic order."""
    names = variables_of(query)
    if names and not universe:
        raise GroundingError("cannot ground a non-ground query over an empty universe")
    out = []
    for theta in _substitutions(names, universe):
        out.append((theta, Query(substitute(query.consequent, theta),
                                 substitute(query.antecedent, theta), query.bounds)))
    return out


def check_signatures(*items):
    """Arity consistency across programs, queries and formulas; returns the signature map."""
    try:
        return predicate_signatures(*items)
    except ParseError as exc:
        raise GroundingError(str(exc)) from exc
