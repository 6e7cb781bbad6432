"""Command-line front end.

    plpinherit check FILE
    plpinherit partition FILE
    plpinherit query FILE --semantics {0,1,z,lex} [--witness] [--json] "QUERY"
    plpinherit oracle FILE --semantics {z,lex} "QUERY"
    plpinherit selftest

Exit codes: 0 success / Yes / agreement, 1 inconsistent / No / disagreement,
2 usage or input error. ``--max-atoms`` defaults to ``$PLPINHERIT_MAX_ATOMS``
or 20; the flag wins over the environment.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import bundled
from .defaults import Reasoner, Semantics
from .errors import PLPError
from .ground import ground_instances_of_query
from .oracle import DEFAULT_ORACLE_CAP, tight_consequence_oracle
from .syntax import BoundVariables, parse_program, parse_query, render
from .worlds import DEFAULT_MAX_ATOMS

log = logging.getLogger("plpinherit")

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    max_atoms: int = DEFAULT_MAX_ATOMS
    oracle_cap: int = DEFAULT_ORACLE_CAP
    json: bool = False
    semantics: Semantics | None = None
    witness: bool = False

    def __post_init__(self):
        if self.max_atoms < 1 or self.oracle_cap < 1:
            raise ValueError("caps must be positive")


# --------------------------------------------------------------------------
# formatting
# --------------------------------------------------------------------------

def frac_json(x: Fraction) -> dict:
    return {"num": x.numerator, "den": x.denominator}


def frac_text(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x)
    return f"{x} ({float(x):.6g})"


def interval_text(iv) -> str:
    s = f"[{frac_text(iv.lower)}, {frac_text(iv.upper)}]"
    if iv.is_empty:
        s += "  (empty: no relevant model)"
    return s


def theta_text(theta: dict) -> str:
    if not theta:
        return "{}"
    return "{" + ", ".join(f"{k}/{v}" for k, v in theta.items()) + "}"


def world_json(ws, dist):
    out = []
    for i in sorted(dist):
        atoms = sorted((render(a) for a in ws.world_atoms(i)))
        out.append({"world": atoms, "p": frac_json(dist[i])})
    return out


def world_text(ws, dist) -> list:
    lines = []
    for i in sorted(dist):
        atoms = ", ".join(sorted(render(a) for a in ws.world_atoms(i)))
        lines.append(f"      {{{atoms}}}: {frac_text(dist[i])}")
    return lines


def emit(cfg: RunConfig, payload: dict, lines: list):
    if cfg.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------

def _load(path):
    return parse_program(Path(path).read_text())


def cmd_check(path, cfg: RunConfig) -> int:
    r = Reasoner(_load(path), max_atoms=cfg.max_atoms)
    ok = r.consistent
    emit(cfg, {"program": str(path), "consistent": ok},
         ["consistent" if ok else "inconsistent"])
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_partition(path, cfg: RunConfig) -> int:
    r = Reasoner(_load(path), max_atoms=cfg.max_atoms)
    zp = r.partition
    if zp is None:
        emit(cfg, {"program": str(path), "consistent": False, "levels": None},
             ["nil (the program is inconsistent: some round tolerates no default)"])
        return EXIT_NEGATIVE
    levels = [[render(d) for d in level] for level in zp.levels]
    lines = []
    if not levels:
        lines.append("no defaults; empty partition")
    for i, level in enumerate(levels):
        lines.append(f"D_{i}:")
        lines += [f"  {d}" for d in level]
    emit(cfg, {"program": str(path), "consistent": True, "levels": levels}, lines)
    return EXIT_OK


def cmd_query(path, query_text, cfg: RunConfig) -> int:
    program = _load(path)
    query = parse_query(query_text)
    s = cfg.semantics or Semantics.LEX
    r = Reasoner(program, queries=[query], max_atoms=cfg.max_atoms,
                 workers=min(4, os.cpu_count() or 1))
    consistent = r.consistent
    if s.nonmonotonic and not consistent:
        raise PLPError(f"{s.value}-entailment needs a consistent program; this one has no z-partition")
    answer = r.answer(query, s)
    log.debug("%d ground atoms, %d LP solves", r.ws.n_atoms, r.engine.lp_calls)
    payload = {"query": render(query), "semantics": s.value, "consistent": consistent}
    lines = [f"query: {render(query)}", f"semantics: {s.value}"]
    instances = ground_instances_of_query(query, r.universe)
    if isinstance(query.bounds, BoundVariables):
        x, y = query.bounds.lower, query.bounds.upper
        subs, wits = [], []
        for (theta, iv), (_, g) in zip(answer.tight, instances):
            subs.append({"theta": theta, "lower": frac_json(iv.lower), "upper": frac_json(iv.upper)})
            lines.append(f"{theta_text(theta)}  {x} = {frac_text(iv.lower)}, "
                         f"{y} = {frac_text(iv.upper)}  {interval_text(iv)}")
            if cfg.witness:
                lo, hi = r.witnesses(g.consequent, g.antecedent, s)
                wits.append({"theta": theta,
                             "lower": None if lo is None else world_json(r.ws, lo),
                             "upper": None if hi is None else world_json(r.ws, hi)})
                if lo is None:
                    lines.append("    no witness: no relevant model")
                else:
                    lines.append("    distribution attaining the lower bound:")
                    lines += world_text(r.ws, lo)
                    lines.append("    distribution attaining the upper bound:")
                    lines += world_text(r.ws, hi)
        payload["substitutions"] = subs
        if cfg.witness:
            payload["witness"] = wits
        emit(cfg, payload, lines)
        return EXIT_OK
    payload["substitutions"] = [{"theta": theta} for theta in answer.correct]
    payload["answer"] = "yes" if answer.yes else "no"
    if answer.yes:
        lines.append("Yes")
        lines += [f"  {theta_text(theta)}" for theta in answer.correct]
    else:
        lines.append("No")
    emit(cfg, payload, lines)
    return EXIT_OK if answer.yes else EXIT_NEGATIVE


def cmd_oracle(path, query_text, cfg: RunConfig) -> int:
    program = _load(path)
    query = parse_query(query_text)
    s = cfg.semantics or Semantics.LEX
    if not s.nonmonotonic:
        raise PLPError("the oracle cross-check covers z and lex only")
    r = Reasoner(program, queries=[query], max_atoms=cfg.max_atoms)
    if not r.consistent:
        raise PLPError("the program is inconsistent; nothing to cross-check")
    rows, lines, agree = [], [], True
    for theta, g in ground_instances_of_query(query, r.universe):
        engine_iv = r.tight(g.consequent, g.antecedent, s)
        oracle_iv = tight_consequence_oracle(r.theory, r.partition, g.consequent, g.antecedent,
                                             s, r.engine, cfg.oracle_cap)
        same = engine_iv == oracle_iv
        agree &= same
        rows.append({"theta": theta, "engine": [str(engine_iv.lower), str(engine_iv.upper)],
                     "oracle": [str(oracle_iv.lower), str(oracle_iv.upper)], "agree": same})
        lines.append(f"{theta_text(theta)}  engine {engine_iv}  oracle {oracle_iv}  "
                     f"{'AGREE' if same else 'DISAGREE'}")
    emit(cfg, {"query": render(query), "semantics": s.value, "results": rows, "agree": agree},
         lines)
    return EXIT_OK if agree else EXIT_NEGATIVE


def selftest_rows(cfg: RunConfig | None = None):
    """One dict per bundled check: expected vs computed and a verdict."""
    cfg = cfg or RunConfig()
    rows = []
    for name, expected in bundled.CONSISTENCY:
        r = Reasoner(bundled.load(name), max_atoms=cfg.max_atoms)
        got = r.consistent
        rows.append({"check": f"consistency {name}", "expected": str(expected),
                     "computed": str(got), "status": "pass" if got == expected else "FAIL"})
    for case in bundled.CASES:
        program, query = bundled.load_case(case)
        r = Reasoner(program, queries=[query], max_atoms=cfg.max_atoms)
        (_, iv), = r.answer(query, case.semantics).tight
        label = f"{case.program} {render(query)} [{case.semantics}]"
        if case.expected is None:
            oracle_iv = tight_consequence_oracle(r.theory, r.partition, query.consequent,
                                                 query.antecedent, case.semantics, r.engine,
                                                 cfg.oracle_cap)
            status = "info" if oracle_iv == iv else "FAIL"
            note = f"{case.note}; oracle {oracle_iv} {'agrees' if oracle_iv == iv else 'DISAGREES'}"
            rows.append({"check": label, "expected": "-", "computed": str(iv),
                         "status": status, "note": note})
        else:
            want = f"[{case.expected[0]}, {case.expected[1]}]"
            ok = (iv.lower, iv.upper) == case.expected
            rows.append({"check": label, "expected": want, "computed": str(iv),
                         "status": "pass" if ok else "FAIL"})
    return rows


def cmd_selftest(cfg: RunConfig) -> int:
    rows = selftest_rows(cfg)
    failed = sum(r["status"] == "FAIL" for r in rows)
    lines = []
    width = max(len(r["check"]) for r in rows)
    for r in rows:
        line = f"{r['status']:<5} {r['check']:<{width}}  expected {r['expected']:<12} got {r['computed']}"
        if r.get("note"):
            line += f"\n      note: {r['note']}"
        lines.append(line)
    lines.append(f"{len(rows) - failed}/{len(rows)} checks without failure")
    emit(cfg, {"rows": rows, "failed": failed}, lines)
    return EXIT_OK if failed == 0 else EXIT_NEGATIVE


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------

def _env_max_atoms():
    raw = os.environ.get("PLPINHERIT_MAX_ATOMS")
    if raw is None:
        return DEFAULT_MAX_ATOMS
    try:
        return int(raw)
    except ValueError:
        raise PLPError(f"PLPINHERIT_MAX_ATOMS={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-atoms", type=int, default=argparse.SUPPRESS,
                        help="largest Herbrand base to enumerate (default 20)")
    common.add_argument("--oracle-cap", type=int, default=argparse.SUPPRESS,
                        help="most defaults the brute-force oracle accepts (default 12)")
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="plpinherit", parents=[common],
                                description="Probabilistic logic programs under inheritance with overriding.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="decide consistency")
    c.add_argument("file")
    c = sub.add_parser("partition", parents=[common], help="print the z-partition")
    c.add_argument("file")
    c = sub.add_parser("query", parents=[common], help="answer a query")
    c.add_argument("file")
    c.add_argument("query")
    c.add_argument("--semantics", "-s", choices=["0", "1", "z", "lex"], default="lex")
    c.add_argument("--witness", action="store_true", help="print extreme distributions")
    c = sub.add_parser("oracle", parents=[common], help="cross-check against brute force")
    c.add_argument("file")
    c.add_argument("query")
    c.add_argument("--semantics", "-s", choices=["z", "lex"], default="lex")
    sub.add_parser("selftest", parents=[common], help="run the bundled examples")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        max_atoms = getattr(args, "max_atoms", None)
        cfg = RunConfig(
            max_atoms=max_atoms if max_atoms is not None else _env_max_atoms(),
            oracle_cap=getattr(args, "oracle_cap", DEFAULT_ORACLE_CAP),
            json=getattr(args, "json", False),
            semantics=Semantics.parse(args.semantics) if hasattr(args, "semantics") else None,
            witness=getattr(args, "witness", False),
        )
        if args.command == "check":
            return cmd_check(args.file, cfg)
        if args.command == "partition":
            return cmd_partition(args.file, cfg)
        if args.command == "query":
            return cmd_query(args.file, args.query, cfg)
        if args.command == "oracle":
            return cmd_oracle(args.file, args.query, cfg)
        return cmd_selftest(cfg)
    except (PLPError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
