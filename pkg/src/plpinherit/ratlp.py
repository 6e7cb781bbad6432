"""Exact rational linear programming (two-phase tableau simplex, Bland's rule).

All variables are implicitly nonnegative. Arithmetic is exact: ``gmpy2.mpq``
when gmpy2 is installed, :class:`fractions.Fraction` otherwise. Everything
crossing the module boundary is a ``Fraction``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import UnboundedError

try:
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

__all__ = ["LinRow", "LinearSystem", "Status", "Outcome", "feasible", "optimize"]

_RELATIONS = (">=", "<=", "=")
_FLIP = {">=": "<=", "<=": ">=", "=": "="}


@dataclass(frozen=True)
class LinRow:
    coeffs: Mapping[int, Fraction]
    rel: str
    rhs: Fraction = Fraction(0)

    def __post_init__(self):
        if self.rel not in _RELATIONS:
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(self, "coeffs", {int(j): Fraction(v) for j, v in self.coeffs.items()})
        object.__setattr__(self, "rhs", Fraction(self.rhs))

    def lhs(self, x: Mapping[int, Fraction]) -> Fraction:
        return sum((v * x.get(j, 0) for j, v in self.coeffs.items()), Fraction(0))

    def holds(self, x: Mapping[int, Fraction]) -> bool:
        s = self.lhs(x)
        if self.rel == ">=":
            return s >= self.rhs
        if self.rel == "<=":
            return s <= self.rhs
        return s == self.rhs


@dataclass(frozen=True)
class LinearSystem:
    rows: tuple
    n_vars: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        for r in self.rows:
            for j in r.coeffs:
                if not 0 <= j < self.n_vars:
                    raise ValueError(f"row index {j} outside 0..{self.n_vars - 1}")

    def verify(self, x: Mapping[int, Fraction]) -> bool:
        """Exact check that ``x`` is nonnegative and satisfies every row."""
        if any(v < 0 for v in x.values()):
            return False
        return all(r.holds(x) for r in self.rows)


class Status(enum.Enum):
    INFEASIBLE = "infeasible"
    FEASIBLE = "feasible"
    OPTIMAL = "optimal"


@dataclass(frozen=True)
class Outcome:
    status: Status
    value: Fraction | None = None
    witness: dict = field(default=None)

    @property
    def feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE


INFEASIBLE = Outcome(Status.INFEASIBLE)


def _to_fraction(q) -> Fraction:
    if isinstance(q, Fraction):
        return q
    return Fraction(int(q.numerator), int(q.denominator))


class _Tableau:
    """Dense simplex tableau; the last entry of every row is the right-hand side."""

    def __init__(self, rows, basis):
        self.rows = rows
        self.basis = basis

    def pivot(self, r, j, obj):
        rows = self.rows
        prow = rows[r]
        inv = 1 / prow[j]
        prow = [v * inv for v in prow]
        rows[r] = prow
        nz = [k for k, v in enumerate(prow) if v]
        for i, row in enumerate(rows):
            if i != r:
                f = row[j]
                if f:
                    for k in nz:
                        row[k] -= f * prow[k]
        f = obj[j]
        if f:
            for k in nz:
                obj[k] -= f * prow[k]
        self.basis[r] = j

    def run(self, obj, allowed):
        """Minimize with reduced-cost row ``obj`` over columns ``< allowed`` (Bland)."""
        rows, basis = self.rows, self.basis
        while True:
            enter = -1
            for j in range(allowed):
                if obj[j] < 0:
                    enter = j
                    break
            if enter < 0:
                return
            leave, best = -1, None
            for i, row in enumerate(rows):
                a = row[enter]
                if a > 0:
                    ratio = row[-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        leave, best = i, ratio
            if leave < 0:
                raise UnboundedError("LP objective is unbounded")
            self.pivot(leave, enter, obj)


def _solve(system: LinearSystem, objective=None, maximize=False) -> Outcome:
    n = system.n_vars
    zero = _Q(0)
    prepared = []
    for r in system.rows:
        a = {j: _Q(v.numerator, v.denominator) for j, v in r.coeffs.items() if v}
        b = _Q(r.rhs.numerator, r.rhs.denominator)
        rel = r.rel
        if b < 0 or (b == 0 and rel == ">="):
            a = {j: -v for j, v in a.items()}
            b, rel = -b, _FLIP[rel]
        if rel == "<=" and all(v <= 0 for v in a.values()):
            continue  # holds for every nonnegative x
        if not a:
            if b == 0:
                continue
            return INFEASIBLE
        prepared.append((a, rel, b))

    m = len(prepared)
    n_slack = sum(1 for _, rel, _ in prepared if rel != "=")
    n_art = sum(1 for _, rel, _ in prepared if rel != "<=")
    first_art = n + n_slack
    width = first_art + n_art
    rows, basis = [], []
    s, t = n, first_art
    for a, rel, b in prepared:
        row = [zero] * (width + 1)
        for j, v in a.items():
            row[j] = v
        row[-1] = b
        if rel == "<=":
            row[s] = _Q(1)
            basis.append(s)
            s += 1
        else:
            if rel == ">=":
                row[s] = _Q(-1)
                s += 1
            row[t] = _Q(1)
            basis.append(t)
            t += 1
        rows.append(row)
    tab = _Tableau(rows, basis)

    if n_art:
        obj = [zero] * (width + 1)
        for row, bv in zip(rows, basis):
            if bv >= first_art:
                for k, v in enumerate(row):
                    if v:
                        obj[k] -= v
        for k in range(first_art, width):
            obj[k] = zero
        tab.run(obj, first_art)
        if obj[-1] != 0:
            return INFEASIBLE
        keep = []
        for i in range(len(tab.rows)):
            if tab.basis[i] >= first_art:
                row = tab.rows[i]
                j = next((k for k in range(first_art) if row[k]), -1)
                if j < 0:
                    continue  # redundant row
                tab.pivot(i, j, [zero] * (width + 1))
            keep.append(i)
        tab.rows = [tab.rows[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    if objective is not None:
        cost = [zero] * (width + 1)
        for j, v in objective.items():
            q = _Q(Fraction(v).numerator, Fraction(v).denominator)
            cost[j] = -q if maximize else q
        obj = list(cost)
        for row, bv in zip(tab.rows, tab.basis):
            cb = cost[bv]
            if cb:
                for k, v in enumerate(row):
                    if v:
                        obj[k] -= cb * v
        obj[-1] = -sum((cost[bv] * row[-1] for row, bv in zip(tab.rows, tab.basis)), zero)
        tab.run(obj, first_art)

    x = {j: Fraction(0) for j in range(n)}
    for row, bv in zip(tab.rows, tab.basis):
        if bv < n:
            x[bv] = _to_fraction(row[-1])
    if objective is None:
        return Outcome(Status.FEASIBLE, None, x)
    value = sum((Fraction(v) * x[j] for j, v in objective.items()), Fraction(0))
    return Outcome(Status.OPTIMAL, value, x)


def feasible(system: LinearSystem) -> Outcome:
    """Feasibility with an exact vertex witness, or ``Status.INFEASIBLE``."""
    return _solve(system)


def optimize(system: LinearSystem, objective: Mapping[int, Fraction], sense: str = "max") -> Outcome:
    """Optimum of a linear objective; raises :class:`UnboundedError` if unbounded."""
    if sense not in ("min", "max"):
        raise ValueError("sense must be 'min' or 'max'")
    for j in objective:
        if not 0 <= j < system.n_vars:
            raise ValueError(f"objective index {j} outside 0..{system.n_vars - 1}")
    return _solve(system, dict(objective), maximize=(sense == "max"))
