"""Inheritance with overriding: toleration, z-partition, z- and lex-entailment.

The staged algorithms layer the defaults by iterated toleration, then search
level by level, from the most specific down, for preferred default subsets. :class:`Reasoner` ties grounding,
world enumeration and the LP engine together and answers queries under
all four semantics.
"""

from __future__ import annotations

import enum
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import cached_property

from .errors import GroundingError, InconsistentProgramError
from .ground import (
    check_signatures, ground_instances_of_query, ground_program, herbrand_base,
    herbrand_universe, split_theory, substitute,
)
from .logical import EMPTY, Engine, Interval
from .syntax import (
    And, BoundVariables, ConditionalConstraint, Program, Query, variables_of,
)
from .worlds import DEFAULT_MAX_ATOMS, enumerate_worlds

__all__ = [
    "Semantics", "ZPartition", "Answer", "Reasoner", "tolerates", "z_partition",
    "z_stage", "lex_stage", "tight_z_consequence", "tight_lex_consequence",
    "is_consistent", "s_consequence", "tight_s_consequence_nonground",
    "entails_negated_classical", "tight_consequence_disjunctive_evidence",
    "answer_query",
]


class Semantics(str, enum.Enum):
    ZERO = "0"
    ONE = "1"
    Z = "z"
    LEX = "lex"

    @classmethod
    def parse(cls, text) -> "Semantics":
        if isinstance(text, cls):
            return text
        try:
            return cls(str(text).lower())
        except ValueError:
            raise ValueError(f"unknown semantics {text!r}; use 0, 1, z or lex") from None

    @property
    def nonmonotonic(self) -> bool:
        return self in (Semantics.Z, Semantics.LEX)


@dataclass(frozen=True)
class ZPartition:
    levels: tuple

    @property
    def k(self) -> int:
        return len(self.levels) - 1

    def rank(self, d) -> int:
        for i, level in enumerate(self.levels):
            if d in level:
                return i
        raise KeyError(d)

    def __len__(self):
        return len(self.levels)

    def __iter__(self):
        return iter(self.levels)


# --------------------------------------------------------------------------
# toleration and the z-partition
# --------------------------------------------------------------------------

def tolerates(c: ConditionalConstraint, remainder, strict, engine: Engine) -> bool:
    """Some model of ``strict ∪ remainder`` verifies ``c`` (Pr(antecedent) = 1)."""
    members = tuple(strict) + tuple(remainder) + (c,)
    return engine.feasible_on(members, c.antecedent)[0]


def z_partition(strict, defaults, engine: Engine):
    """The z-partition of ``defaults`` under ``strict``, or ``None`` if inconsistent."""
    strict = tuple(strict)
    remainder = list(defaults)
    levels = []
    while remainder:
        level = tuple(d for d in remainder if tolerates(d, remainder, strict, engine))
        if not level:
            return None
        levels.append(level)
        remainder = [d for d in remainder if d not in level]
    return ZPartition(tuple(levels))


# --------------------------------------------------------------------------
# staged searches
# --------------------------------------------------------------------------

def z_stage(strict, zp: ZPartition, evidence, engine: Engine):
    """Greedy top-down level addition.

    Returns ``(constraints, j_star)`` where ``j_star`` is the lowest level
    added (``k + 1`` if none), or ``None`` if the evidence contradicts the
    strict part.
    """
    R = tuple(strict)
    if not engine.feasible_on(R, evidence)[0]:
        return None
    j = zp.k
    while j >= 0 and engine.feasible_on(R + zp.levels[j], evidence)[0]:
        R = R + zp.levels[j]
        j -= 1
    return R, j + 1


def lex_stage(strict, zp: ZPartition, evidence, engine: Engine):
    """Level-by-level family of maximum-cardinality satisfiable default sets.

    Returns ``(family, counts)`` with ``counts = (n_k, ..., n_0)`` the number
    of defaults kept per level, or ``None`` if the evidence contradicts the
    strict part. Subsets of a level are tried by decreasing size and the
    search stops at the first size with a satisfiable member.
    """
    strict = tuple(strict)
    if not engine.feasible_on(strict, evidence)[0]:
        return None
    family = [()]
    counts = []
    for j in range(zp.k, -1, -1):
        level = zp.levels[j]
        for size in range(len(level), -1, -1):
            found = []
            for G in itertools.combinations(level, size):
                for H in family:
                    if engine.feasible_on(strict + H + G, evidence)[0]:
                        found.append(H + G)
            if found:
                break
        family = found
        counts.append(size)
    return family, tuple(counts)


def tight_z_consequence(theory, zp: ZPartition, beta, alpha, engine: Engine) -> Interval:
    strict, _ = theory
    staged = z_stage(strict, zp, alpha, engine)
    if staged is None:
        return EMPTY
    R, _ = staged
    return engine.range_on(R, beta, alpha)


def tight_lex_consequence(theory, zp: ZPartition, beta, alpha, engine: Engine) -> Interval:
    strict, _ = theory
    staged = lex_stage(strict, zp, alpha, engine)
    if staged is None:
        return EMPTY
    family, _ = staged
    out = EMPTY
    for H in family:
        out = out.hull(engine.range_on(tuple(strict) + H, beta, alpha))
    return out


# --------------------------------------------------------------------------
# answers
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class Answer:
    """Result of a query under one semantics.

    ``tight`` holds one ``(theta, interval)`` pair per ground instance of a
    query with bound variables; ``correct`` holds the object substitutions
    under which a numeric query is entailed.
    """

    query: Query
    semantics: Semantics
    tight: tuple = ()
    correct: tuple = ()

    @property
    def yes(self):
        if isinstance(self.query.bounds, BoundVariables):
            return None
        return bool(self.correct)

    def substitutions(self):
        """Full substitutions, with the bound variables mapped to the tight bounds."""
        b = self.query.bounds
        return [{**theta, b.lower: iv.lower, b.upper: iv.upper} for theta, iv in self.tight]


class Reasoner:
    """A ground probabilistic logic program ready for querying.

    ``queries``, ``formulas`` and ``atoms`` only widen the vocabulary: their
    constants join the Herbrand universe and their ground atoms the base.
    """

    def __init__(self, program: Program, *, queries=(), formulas=(), atoms=(),
                 max_atoms: int = DEFAULT_MAX_ATOMS, restrict: bool = True,
                 backend: str | None = None, workers: int = 1):
        self.program = Program(program)
        self.workers = workers
        queries = tuple(queries)
        extra = queries + tuple(formulas) + tuple(atoms)
        signatures = check_signatures(self.program, *extra)
        self.universe = herbrand_universe(self.program, None, extra)
        self.ground = ground_program(self.program, self.universe)
        self.theory = split_theory(self.ground)
        occurring = list(self.ground)
        for q in queries:
            occurring += [g for _, g in ground_instances_of_query(q, self.universe)]
        occurring += [f for f in tuple(formulas) + tuple(atoms) if not variables_of(f)]
        base = herbrand_base(self.universe, signatures, restrict=restrict,
                             occurring=occurring, cap=max_atoms)
        self.ws = enumerate_worlds(base, max_atoms, backend)
        self.engine = Engine(self.ws)

    # -- consistency --------------------------------------------------------

    @cached_property
    def partition(self):
        return z_partition(self.theory.strict, self.theory.defaults, self.engine)

    @property
    def consistent(self) -> bool:
        return self.partition is not None

    def _require_partition(self) -> ZPartition:
        zp = self.partition
        if zp is None:
            raise InconsistentProgramError("the program is inconsistent (no z-partition)")
        return zp

    # -- ground tight consequence -------------------------------------------

    def tight(self, beta, alpha, semantics) -> Interval:
        s = Semantics.parse(semantics)
        if s is Semantics.ZERO:
            return self.engine.tight_0(self.ground, beta, alpha)
        if s is Semantics.ONE:
            return self.engine.tight_1(self.ground, beta, alpha)
        zp = self._require_partition()
        if s is Semantics.Z:
            return tight_z_consequence(self.theory, zp, beta, alpha, self.engine)
        return tight_lex_consequence(self.theory, zp, beta, alpha, self.engine)

    def witnesses(self, beta, alpha, semantics):
        """Distributions attaining the lower and upper tight bound, or ``(None, None)``."""
        s = Semantics.parse(semantics)
        if s is Semantics.ZERO:
            return self.engine.tight_0_witnesses(self.ground, beta, alpha)
        if s is Semantics.ONE:
            return self.engine.range_witnesses(self.ground, beta, alpha)
        systems = self.minimal_systems(alpha, s)
        if not systems:
            return None, None
        ranges = [(self.engine.range_on(R, beta, alpha), R) for R in systems]
        lo_sys = min(ranges, key=lambda t: t[0].lower)[1]
        hi_sys = max(ranges, key=lambda t: t[0].upper)[1]
        return (self.engine.range_witnesses(lo_sys, beta, alpha)[0],
                self.engine.range_witnesses(hi_sys, beta, alpha)[1])

    def minimal_systems(self, evidence, semantics):
        """Constraint sets whose models (with Pr(evidence) = 1) are the minimal models."""
        s = Semantics.parse(semantics)
        zp = self._require_partition()
        strict = self.theory.strict
        if s is Semantics.Z:
            staged = z_stage(strict, zp, evidence, self.engine)
            return [] if staged is None else [staged[0]]
        if s is Semantics.LEX:
            staged = lex_stage(strict, zp, evidence, self.engine)
            return [] if staged is None else [tuple(strict) + H for H in staged[0]]
        raise ValueError("minimal systems exist only for z and lex")

    def _map(self, fn, items):
        """``map`` over ground instances; results keep the input order."""
        items = list(items)
        if self.workers <= 1 or len(items) < 2:
            return [fn(x) for x in items]
        self.partition  # computed once before the workers share it
        with ThreadPoolExecutor(self.workers) as pool:
            return list(pool.map(fn, items))

    # -- entailment ---------------------------------------------------------

    def instances(self, psi, phi):
        names = variables_of(psi, phi)
        if not names:
            return [(psi, phi)]
        if not self.universe:
            raise GroundingError("cannot ground a non-ground constraint over an empty universe")
        out = []
        for combo in itertools.product(sorted(self.universe), repeat=len(names)):
            theta = dict(zip(sorted(names), combo))
            out.append((substitute(psi, theta), substitute(phi, theta)))
        return out

    def tight_nonground(self, psi, phi, semantics) -> Interval:
        out = EMPTY
        for iv in self._map(lambda g: self.tight(*g, semantics), self.instances(psi, phi)):
            out = out.hull(iv)
        return out

    def entails(self, c: ConditionalConstraint, semantics) -> bool:
        tights = self._map(lambda g: self.tight(*g, semantics),
                           self.instances(c.consequent, c.antecedent))
        return all(iv.within(c.lower, c.upper) for iv in tights)

    def entails_negated(self, eps, eps2, semantics) -> bool:
        """Whether ``¬(eps2|eps)[1, 1]`` holds in every minimal model under evidence ``eps``."""
        support = And(eps, eps2)
        return all(not self.engine.feasible_on(system, support)[0]
                   for system in self.minimal_systems(eps, semantics))

    def tight_disjunctive(self, evidences, beta, semantics) -> Interval:
        """Tight bounds for ``beta`` under the evidence ``ε_1 ∨ ... ∨ ε_m``."""
        s = Semantics.parse(semantics)
        zp = self._require_partition()
        strict = self.theory.strict
        if not evidences:
            raise ValueError("need at least one evidence formula")
        scored = []
        for eps in evidences:
            if s is Semantics.Z:
                staged = z_stage(strict, zp, eps, self.engine)
                if staged is not None:
                    R, j_star = staged
                    scored.append((-j_star, eps, [R]))
            elif s is Semantics.LEX:
                staged = lex_stage(strict, zp, eps, self.engine)
                if staged is not None:
                    family, counts = staged
                    scored.append((counts, eps, [tuple(strict) + H for H in family]))
            else:
                raise ValueError("disjunctive evidence is defined for z and lex only")
        if not scored:
            return EMPTY
        best = max(score for score, _, _ in scored)
        out = EMPTY
        for score, eps, systems in scored:
            if score == best:
                for system in systems:
                    out = out.hull(self.engine.range_on(system, beta, eps))
        return out

    def answer(self, query: Query, semantics) -> Answer:
        s = Semantics.parse(semantics)
        instances = ground_instances_of_query(query, self.universe)
        tights = self._map(lambda inst: self.tight(inst[1].consequent, inst[1].antecedent, s),
                           instances)
        if isinstance(query.bounds, BoundVariables):
            return Answer(query, s, tight=tuple(zip((t for t, _ in instances), tights)))
        lo, hi = query.bounds.lower, query.bounds.upper
        correct = tuple(theta for (theta, _), iv in zip(instances, tights) if iv.within(lo, hi))
        return Answer(query, s, correct=correct)


# --------------------------------------------------------------------------
# program-level functions
# --------------------------------------------------------------------------

def is_consistent(program: Program, **kw) -> bool:
    return Reasoner(program, **kw).consistent


def s_consequence(program: Program, c: ConditionalConstraint, semantics, **kw) -> bool:
    return Reasoner(program, formulas=[c], **kw).entails(c, semantics)


def tight_s_consequence_nonground(program: Program, psi, phi, semantics, **kw) -> Interval:
    return Reasoner(program, formulas=[psi, phi], **kw).tight_nonground(psi, phi, semantics)


def entails_negated_classical(program: Program, eps, eps2, semantics, **kw) -> bool:
    return Reasoner(program, formulas=[eps, eps2], **kw).entails_negated(eps, eps2, semantics)


def tight_consequence_disjunctive_evidence(program: Program, evidences, beta, semantics,
                                           **kw) -> Interval:
    r = Reasoner(program, formulas=[*evidences, beta], **kw)
    return r.tight_disjunctive(list(evidences), beta, semantics)


def answer_query(program: Program, query: Query, semantics, **kw) -> Answer:
    return Reasoner(program, queries=[query], **kw).answer(query, semantics)

