"""Compare the numba and numpy world kernels, and show how query cost grows with atoms.

    python3 benchmarks/bench_kernels.py [--max-atoms 20] [--repeat 5]

The first section times formula evaluation and column grouping per backend.
The second answers one lex query on random programs of growing vocabulary;
since every world is enumerated, runtime roughly doubles per added atom
once the LP stops dominating. This is the practical face of the problem's
worst-case hardness, not a proof of it.
"""

from __future__ import annotations

import argparse
import random
import statistics
import time

import numpy as np

from plpinherit import _accel
from plpinherit.defaults import Reasoner
from plpinherit.ground import HerbrandBase
from plpinherit.oracle import atom_names, random_consistent_program, random_formula
from plpinherit.worlds import compile_formula


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def kernel_table(sizes, repeat):
    rng = random.Random(0)
    backends = ["numpy"] + (["numba"] if _accel.HAVE_NUMBA else [])
    print(f"{'atoms':>5} {'worlds':>9} " + " ".join(f"{b + ' eval':>12} {b + ' group':>12}" for b in backends)
          + ("   speedup eval/group" if len(backends) == 2 else ""))
    for n in sizes:
        base = HerbrandBase(tuple(atom_names(n)))
        formulas = [random_formula(rng, list(base), 4) for _ in range(16)]
        compiled = [compile_formula(f, base) for f in formulas]
        masks = np.vstack([_accel.evaluate(o, a, n, "numpy") for o, a in compiled])
        row = {}
        for b in backends:
            _accel.evaluate(*compiled[0], n, b)  # compile outside the timing
            _accel.group_columns(masks[:2], b)
            row[b] = (best_of(lambda: [_accel.evaluate(o, a, n, b) for o, a in compiled], repeat),
                      best_of(lambda: _accel.group_columns(masks, b), repeat))
            assert np.array_equal(_accel.group_columns(masks, b)[1],
                                  _accel.group_columns(masks, "numpy")[1])
        cells = " ".join(f"{row[b][0] * 1e3:10.2f}ms {row[b][1] * 1e3:10.2f}ms" for b in backends)
        extra = ""
        if len(backends) == 2:
            extra = (f"   {row['numpy'][0] / row['numba'][0]:5.1f}x / "
                     f"{row['numpy'][1] / row['numba'][1]:5.1f}x")
        print(f"{n:>5} {1 << n:>9} {cells}{extra}")


def growth_table(sizes, programs):
    print(f"\n{'atoms':>5} {'worlds':>9} {'median query':>14} {'LP solves':>10}")
    for n in sizes:
        times, solves = [], []
        for seed in range(programs):
            prog, _ = random_consistent_program(seed, n_atoms=n, n_defaults=4)
            rng = random.Random(seed)
            atoms = atom_names(n)
            r = Reasoner(prog, atoms=atoms)
            beta, alpha = random_formula(rng, atoms), random_formula(rng, atoms, 2, True)
            t = time.perf_counter()
            r.tight(beta, alpha, "lex")
            times.append(time.perf_counter() - t)
            solves.append(r.engine.lp_calls)
        print(f"{n:>5} {1 << n:>9} {statistics.median(times) * 1e3:12.1f}ms "
              f"{statistics.median(solves):>10.0f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--max-atoms", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--programs", type=int, default=5)
    args = ap.parse_args()
    print(f"default backend: {_accel.default_backend()}\n")
    kernel_table(range(8, args.max_atoms + 1, 2), args.repeat)
    growth_table(range(2, min(args.max_atoms, 12) + 1, 2), args.programs)
    print("\nnote: world enumeration is exponential in the Herbrand base; expect the "
          "query column to roughly double per atom at the top of the range.")


if __name__ == "__main__":
    main()
