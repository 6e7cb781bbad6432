"""Brute-force reference for z- and lex-entailment, and random test programs.

The reference enumerates every subset of the defaults, keeps those that are
satisfiable together with the strict part and the evidence, and filters them
down to the preferred ones by pairwise comparison. It shares the LP engine
with the staged algorithms but none of their search code: the evidence is
posed as an explicit ``(alpha|true)[1, 1]`` constraint and bounds come from
tight 0-consequence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import OracleCapError
from .ground import split_theory
from .logical import EMPTY, Engine, Interval
from .syntax import TOP, And, Atom, ConditionalConstraint, Not, Program, atoms_of, disj

__all__ = ["DEFAULT_ORACLE_CAP", "MinimalFamily", "z_preferable", "lex_preferable",
           "minimal_sets_bruteforce", "tight_consequence_oracle", "random_formula",
           "atom_names", "random_program", "random_consistent_program"]

DEFAULT_ORACLE_CAP = 12


@dataclass(frozen=True)
class MinimalFamily:
    """Preferred default subsets, each with a witness distribution."""

    members: tuple

    @property
    def sets(self):
        return [h for h, _ in self.members]

    def __len__(self):
        return len(self.members)


def z_preferable(G: frozenset, H: frozenset, levels) -> bool:
    for i in range(len(levels) - 1, -1, -1):
        Di = set(levels[i])
        higher = [set(levels[j]) for j in range(i + 1, len(levels))]
        if Di <= G and not Di <= H and all(Dj <= G and Dj <= H for Dj in higher):
            return True
    return False


def lex_preferable(G: frozenset, H: frozenset, levels) -> bool:
    for i in range(len(levels) - 1, -1, -1):
        Di = set(levels[i])
        if len(G & Di) > len(H & Di) and all(
                len(G & set(levels[j])) == len(H & set(levels[j]))
                for j in range(i + 1, len(levels))):
            return True
    return False


def _evidence(alpha):
    return ConditionalConstraint(alpha, TOP, 1, 1)


def minimal_sets_bruteforce(theory, zp, alpha, semantics, engine: Engine,
                            cap: int = DEFAULT_ORACLE_CAP) -> MinimalFamily:
    strict, defaults = theory
    strict = tuple(strict)
    if len(defaults) > cap:
        raise OracleCapError(f"{len(defaults)} defaults exceed the oracle cap of {cap}")
    R = strict + (_evidence(alpha),)
    if not engine.satisfiable(R)[0]:
        return MinimalFamily(())
    candidates = []
    for bits in range(1 << len(defaults)):
        H = tuple(d for i, d in enumerate(defaults) if bits >> i & 1)
        ok, witness = engine.satisfiable(R + H)
        if ok:
            candidates.append((frozenset(H), witness))
    mode = getattr(semantics, "value", semantics)
    if mode == "z":
        prefer = z_preferable
    elif mode == "lex":
        prefer = lex_preferable
    else:
        raise ValueError("the oracle covers z and lex only")
    levels = tuple(zp.levels) if zp is not None else ()
    keep = tuple((H, w) for H, w in candidates
                 if not any(prefer(G, H, levels) for G, _ in candidates))
    return MinimalFamily(keep)


def tight_consequence_oracle(theory, zp, beta, alpha, semantics, engine: Engine,
                             cap: int = DEFAULT_ORACLE_CAP) -> Interval:
    family = minimal_sets_bruteforce(theory, zp, alpha, semantics, engine, cap)
    out = EMPTY
    R = tuple(theory.strict) + (_evidence(alpha),)
    for H, _ in family.members:
        out = out.hull(engine.tight_0(R + tuple(sorted(H, key=str)), beta, TOP))
    return out


# --------------------------------------------------------------------------
# random instances
# --------------------------------------------------------------------------

def _literal(rng, atoms):
    a = rng.choice(atoms)
    return Not(a) if rng.random() < 0.3 else a


def _head(rng, atoms, body):
    """A literal over an atom not mentioned in ``body`` when one exists."""
    used = atoms_of(body)
    free = [a for a in atoms if a not in used] or list(atoms)
    return _literal(rng, free)


def random_formula(rng: random.Random, atoms, max_literals: int = 2, allow_top: bool = False):
    """A small formula: a literal, a conjunction of literals, or a disjunction."""
    if allow_top and rng.random() < 0.2:
        return TOP
    n = rng.randint(1, max_literals)
    lits = [_literal(rng, atoms) for _ in range(n)]
    f = lits[0]
    for g in lits[1:]:
        f = disj(f, g) if rng.random() < 0.25 else And(f, g)
    return f


def atom_names(n_atoms):
    return [Atom(f"a{i}") for i in range(n_atoms)]


def random_program(seed, n_atoms: int = 3, n_defaults: int = 3, granularity: int = 4,
                   n_strict: int | None = None) -> Program:
    """Deterministic-per-seed ground program over 0-ary atoms ``a0, a1, ...``.

    Default bounds are multiples of ``1/granularity`` with ``l < 1`` and
    ``u > 0``; strict members are ``[1, 1]`` or ``[0, 0]``.
    """
    rng = random.Random(seed)
    atoms = atom_names(n_atoms)
    if n_strict is None:
        n_strict = rng.randint(0, 2)
    members = []
    for _ in range(n_strict):
        v = rng.choice((0, 1))
        body = random_formula(rng, atoms, 2)
        members.append(ConditionalConstraint(_head(rng, atoms, body), body, v, v))
    grid = [Fraction(k, granularity) for k in range(granularity + 1)]
    while len(members) < n_strict + n_defaults:
        lo, hi = sorted(rng.sample(grid, 2)) if rng.random() < 0.85 else (rng.choice(grid),) * 2
        if lo >= 1 or hi <= 0:
            continue
        body = random_formula(rng, atoms, 2, True)
        c = ConditionalConstraint(_head(rng, atoms, body), body, lo, hi)
        if c not in members:
            members.append(c)
    return Program(members)


def random_consistent_program(seed, *, max_tries: int = 200, **params):
    """First consistent program from a seed-derived stream; ``(program, tries)``."""
    from .defaults import z_partition
    from .ground import HerbrandBase
    from .worlds import enumerate_worlds

    n_atoms = params.get("n_atoms", 3)
    base = HerbrandBase(tuple(atom_names(n_atoms)))
    for t in range(max_tries):
        prog = random_program(seed * 1000 + t, **params)
        theory = split_theory(prog)
        engine = Engine(enumerate_worlds(base))
        if z_partition(theory.strict, theory.defaults, engine) is not None:
            return prog, t + 1
    raise RuntimeError(f"no consistent program after {max_tries} tries from seed {seed}")
