"""Classical probabilistic entailment: satisfiability, tight 0- and 1-consequence.

A probabilistic interpretation is a nonnegative weight ``y_I`` per world.
Each constraint ``(psi|phi)[l, u]`` becomes two homogeneous rows::

    sum_{I |= psi & phi} y_I - l * sum_{I |= phi} y_I >= 0
    sum_{I |= psi & phi} y_I - u * sum_{I |= phi} y_I <= 0

which hold for every nonnegative ``y`` with zero mass on ``phi``. Because the
rows are homogeneous, ``inf/sup Pr(beta|alpha)`` over models with
``Pr(alpha) > 0`` is a plain LP once the mass of ``alpha`` is normalized to 1.

:class:`Engine` solves these problems over a reduced column set: worlds that
agree on every formula of the problem are merged into one LP variable and
the witness puts the group mass on the group's first world. Results are
memoized per engine.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _accel
from .ratlp import LinearSystem, LinRow, feasible, optimize
from .syntax import BOTTOM, TOP, And, Not
from .worlds import WorldSpace

__all__ = ["Interval", "EMPTY", "build_rows", "Engine", "satisfiable",
           "tight_0_consequence", "tight_1_consequence"]


@dataclass(frozen=True)
class Interval:
    """A closed subinterval of [0, 1], or the empty interval ``(1, 0)``."""

    lower: Fraction
    upper: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lower", Fraction(self.lower))
        object.__setattr__(self, "upper", Fraction(self.upper))

    @property
    def is_empty(self) -> bool:
        return self.lower > self.upper

    def within(self, lower, upper) -> bool:
        """Containment in ``[lower, upper]``; the empty interval is inside everything."""
        return self.is_empty or (lower <= self.lower and self.upper <= upper)

    def __le__(self, other: "Interval") -> bool:
        if self.is_empty:
            return True
        if other.is_empty:
            return False
        return self.within(other.lower, other.upper)

    def hull(self, other: "Interval") -> "Interval":
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return Interval(min(self.lower, other.lower), max(self.upper, other.upper))

    def __str__(self):
        return f"[{self.lower}, {self.upper}]"


EMPTY = Interval(1, 0)


def _as_dict(mask, coef):
    return {int(i): coef for i in np.flatnonzero(mask)}


def build_rows(constraints, ws: WorldSpace) -> list:
    """Two homogeneous rows per ground constraint, indexed by world."""
    rows = []
    for c in constraints:
        phi = ws.mask(c.antecedent)
        hit = phi & ws.mask(c.consequent)
        miss = phi & ~hit
        for bound, rel in ((c.lower, ">="), (c.upper, "<=")):
            coeffs = _as_dict(hit, 1 - bound)
            coeffs.update(_as_dict(miss, -bound))
            rows.append(LinRow({j: v for j, v in coeffs.items() if v}, rel, 0))
    return rows


class Engine:
    """LP front end over one :class:`WorldSpace`.

    Two problem shapes cover everything:

    * *support* problems: all mass on the ``support`` worlds, total mass 1
      (``Pr(support) = 1``), rows of ``constraints``; optionally the range
      of ``Pr(target)``.
    * *normalized* problems for tight 0-consequence: every world free,
      ``sum_{I |= alpha} y_I = 1``, objective ``sum_{I |= target & alpha} y_I``.
    """

    def __init__(self, ws: WorldSpace):
        self.ws = ws
        self._cache = {}
        self._lock = threading.Lock()
        self.lp_calls = 0

    # -- system construction ----------------------------------------------------

    def _system(self, constraints, support=TOP, target=None, normalize=None):
        ws = self.ws
        cols = np.flatnonzero(ws.mask(support))
        masks = []
        for c in constraints:
            phi = ws.mask(c.antecedent)
            hit = phi & ws.mask(c.consequent)
            masks.append(hit[cols])
            masks.append((phi & ~hit)[cols])
        norm = ws.mask(normalize)[cols] if normalize is not None else np.ones(cols.size, bool)
        masks.append(norm)
        if target is not None:
            masks.append((ws.mask(target)[cols] & norm))
        reps, _ = _accel.group_columns(np.vstack(masks), ws.backend)
        rows = []
        for k, c in enumerate(constraints):
            hit = masks[2 * k][reps]
            miss = masks[2 * k + 1][reps]
            for bound, rel in ((c.lower, ">="), (c.upper, "<=")):
                coeffs = {}
                if bound != 1:
                    coeffs.update((int(g), 1 - bound) for g in np.flatnonzero(hit))
                if bound != 0:
                    coeffs.update((int(g), -bound) for g in np.flatnonzero(miss))
                if coeffs:
                    rows.append(LinRow(coeffs, rel, 0))
        rows.append(LinRow({int(g): 1 for g in np.flatnonzero(norm[reps])}, "=", 1))
        objective = None
        if target is not None:
            objective = {int(g): 1 for g in np.flatnonzero(masks[-1][reps])}
        return LinearSystem(rows, reps.size), objective, cols[reps]

    def _count(self, n):
        with self._lock:
            self.lp_calls += n

    @staticmethod
    def _expand(witness, worlds):
        return {int(worlds[g]): v for g, v in witness.items() if v}

    def _memo(self, key, compute):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            self._cache[key] = value
        return value

    def _feasible(self, constraints, support, normalize):
        constraints = tuple(constraints)

        def compute():
            if not self.ws.mask(support).any():
                return False, None
            if normalize is not None and not (self.ws.mask(support) & self.ws.mask(normalize)).any():
                return False, None
            system, _, worlds = self._system(constraints, support, normalize=normalize)
            self._count(1)
            out = feasible(system)
            if not out.feasible:
                return False, None
            return True, self._expand(out.witness, worlds)

        return self._memo((frozenset(constraints), support, normalize, None), compute)

    def _range(self, constraints, target, support, normalize):
        constraints = tuple(constraints)

        def compute():
            if not self._feasible(constraints, support, normalize)[0]:
                return EMPTY
            system, objective, _ = self._system(constraints, support, target, normalize)
            self._count(2)
            lo = optimize(system, objective, "min").value
            hi = optimize(system, objective, "max").value
            return Interval(lo, hi)

        return self._memo((frozenset(constraints), support, normalize, target), compute)

    def _witnesses(self, constraints, target, support, normalize):
        if not self._feasible(constraints, support, normalize)[0]:
            return None, None
        system, objective, worlds = self._system(tuple(constraints), support, target, normalize)
        out = []
        for sense in ("min", "max"):
            w = self._expand(optimize(system, objective, sense).witness, worlds)
            total = sum(w.values(), Fraction(0))
            out.append({i: v / total for i, v in w.items()})
        return tuple(out)

    # -- public -----------------------------------------------------------------

    def feasible_on(self, constraints, support=TOP):
        """``(satisfiable, witness)`` with ``Pr(support) = 1``; the witness maps world -> weight."""
        return self._feasible(constraints, support, None)

    def range_on(self, constraints, target, support=TOP) -> Interval:
        """Tight range of ``Pr(target)`` over models with ``Pr(support) = 1``; EMPTY if none."""
        return self._range(constraints, target, support, None)

    def range_witnesses(self, constraints, target, support=TOP):
        """Distributions attaining the two ends of :meth:`range_on` (``(None, None)`` if none)."""
        return self._witnesses(constraints, target, support, None)

    def satisfiable(self, constraints):
        return self._feasible(constraints, TOP, None)

    def tight_0(self, constraints, beta, alpha) -> Interval:
        """Tight bounds of ``Pr(beta|alpha)`` over models with ``Pr(alpha) > 0``."""
        return self._range(constraints, beta, TOP, alpha)

    def tight_0_witnesses(self, constraints, beta, alpha):
        """Probability distributions attaining the two ends of :meth:`tight_0`."""
        return self._witnesses(constraints, beta, TOP, alpha)

    def tight_1(self, constraints, beta, alpha) -> Interval:
        """Tight bounds of ``Pr(beta)`` over models with ``Pr(alpha) = 1``."""
        return self._range(constraints, beta, alpha, None)


# -- module-level conveniences (fresh engine per call) ------------------------

def satisfiable(constraints, ws: WorldSpace, evidence=TOP, excluded=BOTTOM):
    """Satisfiability of ``constraints`` plus the point rows ``Pr(evidence) = 1``
    and ``Pr(excluded) = 0``; returns ``(flag, witness)``."""
    support = And(evidence, Not(excluded)) if excluded != BOTTOM else evidence
    return Engine(ws).feasible_on(tuple(constraints), support)


def tight_0_consequence(constraints, beta, alpha, ws: WorldSpace) -> Interval:
    return Engine(ws).tight_0(tuple(constraints), beta, alpha)


def tight_1_consequence(constraints, beta, alpha, ws: WorldSpace) -> Interval:
    return Engine(ws).tight_1(tuple(constraints), beta, alpha)


def is_model(constraints, ws: WorldSpace, pr: dict) -> bool:
    """Direct check of the truth clause ``Pr(phi) = 0 or Pr(psi|phi) in [l, u]``."""
    for c in constraints:
        phi = ws.mask(c.antecedent)
        both = phi & ws.mask(c.consequent)
        p_phi = sum((v for i, v in pr.items() if phi[i]), Fraction(0))
        if p_phi == 0:
            continue
        p_both = sum((v for i, v in pr.items() if both[i]), Fraction(0))
        if not c.lower <= p_both / p_phi <= c.upper:
            return False
    return True

