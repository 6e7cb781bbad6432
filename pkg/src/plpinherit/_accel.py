"""Hot per-world kernels, compiled with numba when available.

Every kernel has a numba implementation and a pure-numpy one with identical
results. The numba path is used when numba imports and the environment
variable ``PLPINHERIT_NUMBA`` is not set to ``0``; ``backend=`` on each
kernel overrides the choice (the benchmark and the tests use it).
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

# postfix opcodes for compiled formulas
OP_ATOM, OP_TRUE, OP_FALSE, OP_NOT, OP_AND = 0, 1, 2, 3, 4

HAVE_NUMBA = numba is not None


def default_backend() -> str:
    if HAVE_NUMBA and os.environ.get("PLPINHERIT_NUMBA", "1") != "0":
        return "numba"
    return "numpy"


# --------------------------------------------------------------------------
# formula evaluation over all worlds
# --------------------------------------------------------------------------

def _eval_numpy(ops, args, n_atoms):
    idx = np.arange(1 << n_atoms, dtype=np.int64)
    stack = []
    for op, arg in zip(ops.tolist(), args.tolist()):
        if op == OP_ATOM:
            stack.append(((idx >> arg) & 1).astype(np.bool_))
        elif op == OP_TRUE:
            stack.append(np.ones(idx.shape, dtype=np.bool_))
        elif op == OP_FALSE:
            stack.append(np.zeros(idx.shape, dtype=np.bool_))
        elif op == OP_NOT:
            stack.append(~stack.pop())
        else:
            right = stack.pop()
            stack.append(stack.pop() & right)
    return stack.pop()


def _eval_loop(ops, args, n_atoms):
    # one opcode at a time over every world, on a preallocated stack of rows
    n = 1 << n_atoms
    stack = np.empty((ops.shape[0] + 1, n), dtype=np.bool_)
    sp = 0
    for k in range(ops.shape[0]):
        op = ops[k]
        if op == 0:
            bit = args[k]
            for w in range(n):
                stack[sp, w] = (w >> bit) & 1 == 1
            sp += 1
        elif op == 1:
            stack[sp, :] = True
            sp += 1
        elif op == 2:
            stack[sp, :] = False
            sp += 1
        elif op == 3:
            for w in range(n):
                stack[sp - 1, w] = not stack[sp - 1, w]
        else:
            sp -= 1
            for w in range(n):
                stack[sp - 1, w] = stack[sp - 1, w] and stack[sp, w]
    return stack[0].copy()


# --------------------------------------------------------------------------
# column signatures: worlds with identical membership in every mask
# --------------------------------------------------------------------------

def _codes_numpy(masks):
    weights = np.left_shift(np.int64(1), np.arange(masks.shape[0], dtype=np.int64))
    return (masks.astype(np.int64) * weights[:, None]).sum(axis=0)


def _codes_loop(masks):
    k, n = masks.shape
    out = np.zeros(n, dtype=np.int64)
    for w in range(n):
        code = 0
        for r in range(k):
            if masks[r, w]:
                code |= 1 << r
        out[w] = code
    return out


if HAVE_NUMBA:
    _eval_numba = numba.njit(cache=True, nogil=True)(_eval_loop)
    _codes_numba = numba.njit(cache=True, nogil=True)(_codes_loop)
else:  # pragma: no cover
    _eval_numba = _codes_numba = None


def evaluate(ops, args, n_atoms, backend=None):
    """Truth value of a postfix-compiled ground formula in every world."""
    backend = backend or default_backend()
    ops = np.ascontiguousarray(ops, dtype=np.int8)
    args = np.ascontiguousarray(args, dtype=np.int64)
    if backend == "numba":
        return _eval_numba(ops, args, n_atoms)
    return _eval_numpy(ops, args, n_atoms)


def signature_codes(masks, backend=None):
    """One int64 code per world column of a (k, n) boolean mask matrix, k <= 62."""
    backend = backend or default_backend()
    masks = np.ascontiguousarray(masks, dtype=np.bool_)
    if masks.shape[0] > 62:
        raise ValueError("at most 62 masks fit in an int64 signature")
    if backend == "numba":
        return _codes_numba(masks)
    return _codes_numpy(masks)


def group_columns(masks, backend=None):
    """Partition world columns by their membership pattern across ``masks``.

    Returns ``(representatives, inverse)``: the first world index of each
    group in increasing order, and the group number of every column.
    """
    masks = np.asarray(masks, dtype=np.bool_)
    if masks.shape[1] == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
    if masks.shape[0] <= 62:
        keys = signature_codes(masks, backend)
        _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    else:
        _, first, inverse = np.unique(masks.T, axis=0, return_index=True,
                                      return_inverse=True)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return first[order].astype(np.int64), rank[np.ravel(inverse)].astype(np.int64)
