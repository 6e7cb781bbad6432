"""Possible worlds over a Herbrand base and formula evaluation.

World ``i`` contains atom ``j`` of the base iff bit ``j`` of ``i`` is set.
"""

from __future__ import annotations

import threading

import numpy as np

from . import _accel
from .errors import GroundingError, WorldCapError
from .ground import HerbrandBase
from .syntax import And, Atom, Bottom, Not, Top, render

__all__ = ["DEFAULT_MAX_ATOMS", "WorldSpace", "enumerate_worlds", "satisfies",
           "satisfying_set", "compile_formula"]

DEFAULT_MAX_ATOMS = 20


def compile_formula(f, base: HerbrandBase):
    """Postfix opcode/argument arrays for a ground formula."""
    ops, args = [], []

    def emit(g):
        if isinstance(g, Atom):
            try:
                j = base.index[g]
            except KeyError:
                raise GroundingError(f"atom {render(g)} is not in the Herbrand base") from None
            ops.append(_accel.OP_ATOM)
            args.append(j)
        elif isinstance(g, Top):
            ops.append(_accel.OP_TRUE)
            args.append(0)
        elif isinstance(g, Bottom):
            ops.append(_accel.OP_FALSE)
            args.append(0)
        elif isinstance(g, Not):
            emit(g.arg)
            ops.append(_accel.OP_NOT)
            args.append(0)
        elif isinstance(g, And):
            emit(g.left)
            emit(g.right)
            ops.append(_accel.OP_AND)
            args.append(0)
        else:
            raise TypeError(f"not a formula: {g!r}")

    emit(f)
    return np.array(ops, dtype=np.int8), np.array(args, dtype=np.int64)


class WorldSpace:
    """All ``2^|base|`` worlds, addressed by integer index.

    Satisfying sets are memoized per instance; the memo is guarded by a lock
    so one space can serve concurrent queries.
    """

    def __init__(self, base: HerbrandBase, backend: str | None = None):
        self.base = base
        self.n_atoms = len(base)
        self.n_worlds = 1 << self.n_atoms
        self.backend = backend
        self._memo = {}
        self._lock = threading.Lock()

    def __len__(self):
        return self.n_worlds

    def world_atoms(self, i: int) -> frozenset:
        return frozenset(a for j, a in enumerate(self.base.atoms) if i >> j & 1)

    def mask(self, f) -> np.ndarray:
        with self._lock:
            hit = self._memo.get(f)
        if hit is not None:
            return hit
        ops, args = compile_formula(f, self.base)
        m = _accel.evaluate(ops, args, self.n_atoms, self.backend)
        m.setflags(write=False)
        with self._lock:
            self._memo[f] = m
        return m


def enumerate_worlds(base: HerbrandBase, cap: int = DEFAULT_MAX_ATOMS,
                     backend: str | None = None) -> WorldSpace:
    if len(base) < 1:
        raise GroundingError("the Herbrand base is empty")
    if len(base) > cap:
        raise WorldCapError(
            f"{len(base)} ground atoms would need 2^{len(base)} worlds; "
            f"the cap is {cap} atoms (raise it with --max-atoms)")
    return WorldSpace(base, backend)


def satisfies(world, f, base: HerbrandBase) -> bool:
    """Truth of a ground formula in one world (a bit-indexed int or a set of atoms)."""
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        if f not in base:
            raise GroundingError(f"atom {render(f)} is not in the Herbrand base")
        if isinstance(world, int):
            return bool(world >> base.index[f] & 1)
        return f in world
    if isinstance(f, Not):
        return not satisfies(world, f.arg, base)
    if isinstance(f, And):
        return satisfies(world, f.left, base) and satisfies(world, f.right, base)
    raise TypeError(f"not a formula: {f!r}")


def satisfying_set(ws: WorldSpace, f) -> np.ndarray:
    """Indices of the worlds satisfying ``f``, ascending."""
    return np.flatnonzero(ws.mask(f))
