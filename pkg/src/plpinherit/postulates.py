"""Executable checks of the KLM-style postulates for z- and lex-entailment.

Each check draws a random instance for a :class:`~plpinherit.defaults.Reasoner`
and returns a :class:`Check`: whether the premises held (``applicable``),
whether the conclusion held, and a printable description of the instance.
Premises are made likely to hold by widening tight intervals, so most draws
are applicable.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .defaults import Reasoner
from .logical import Engine
from .syntax import TOP, And, ConditionalConstraint, Not, disj, render
from .oracle import random_formula

__all__ = ["Check", "POSTULATES", "run_postulate", "valid_implication"]


@dataclass(frozen=True)
class Check:
    name: str
    applicable: bool
    holds: bool
    instance: str

    @property
    def failed(self) -> bool:
        return self.applicable and not self.holds


def _fmt(*parts):
    return "; ".join(parts)


def _cc(psi, phi, lo, hi):
    return f"({render(psi)}|{render(phi)})[{lo}, {hi}]"


def _grid(rng, granularity=4):
    return Fraction(rng.randint(0, granularity), granularity)


def _cover(rng, interval, granularity=4):
    """An interval containing ``interval``, widened by random grid steps (or random)."""
    if interval.is_empty or rng.random() < 0.15:
        lo, hi = sorted((_grid(rng, granularity), _grid(rng, granularity)))
        return lo, hi
    lo = interval.lower - Fraction(rng.randint(0, 1), granularity)
    hi = interval.upper + Fraction(rng.randint(0, 1), granularity)
    return max(lo, Fraction(0)), min(hi, Fraction(1))


def _entails(r: Reasoner, s, phi, eps, lo, hi):
    return r.tight(phi, eps, s).within(lo, hi)


def valid_implication(engine: Engine, phi, lo, hi, psi, lo2, hi2) -> bool:
    """Whether ``(phi|true)[lo, hi] => (psi|true)[lo2, hi2]`` holds in every interpretation."""
    premise = (ConditionalConstraint(phi, TOP, lo, hi),)
    return engine.tight_0(premise, psi, TOP).within(lo2, hi2)


def _equivalent_variant(rng, f):
    return rng.choice([Not(Not(f)), And(f, f), And(f, TOP), And(TOP, f),
                       disj(f, f), f])


def check_rw(r, s, rng, atoms):
    eps = random_formula(rng, atoms, 2, True)
    phi = random_formula(rng, atoms)
    lo, hi = _cover(rng, r.tight(phi, eps, s))
    kind = rng.randrange(3)
    if kind == 0:
        psi, lo2, hi2 = disj(phi, random_formula(rng, atoms, 1)), lo, Fraction(1)
    elif kind == 1:
        psi, lo2, hi2 = Not(phi), 1 - hi, 1 - lo
    else:
        psi = random_formula(rng, atoms)
        lo2, hi2 = sorted((_grid(rng), _grid(rng)))
    desc = _fmt(f"premise {_cc(phi, eps, lo, hi)}", f"conclusion {_cc(psi, eps, lo2, hi2)}")
    applicable = (valid_implication(r.engine, phi, lo, hi, psi, lo2, hi2)
                  and _entails(r, s, phi, eps, lo, hi))
    return Check("RW", applicable, not applicable or _entails(r, s, psi, eps, lo2, hi2), desc)


def check_ref(r, s, rng, atoms):
    eps = random_formula(rng, atoms, 2, True)
    return Check("Ref", True, _entails(r, s, eps, eps, 1, 1), _cc(eps, eps, 1, 1))


def check_lle(r, s, rng, atoms):
    eps = random_formula(rng, atoms, 2, True)
    eps2 = _equivalent_variant(rng, eps)
    phi = random_formula(rng, atoms)
    lo, hi = _cover(rng, r.tight(phi, eps, s))
    a = _entails(r, s, phi, eps, lo, hi)
    b = _entails(r, s, phi, eps2, lo, hi)
    return Check("LLE", True, a == b, _fmt(_cc(phi, eps, lo, hi), _cc(phi, eps2, lo, hi)))


def _implied_evidence(rng, atoms, eps2):
    """Candidate ``eps`` with a fair chance that ``(eps|eps2)[1, 1]`` is entailed."""
    return rng.choice([
        disj(eps2, random_formula(rng, atoms, 1)),
        eps2,
        random_formula(rng, atoms, 1),
        random_formula(rng, atoms),
    ])


def check_cut(r, s, rng, atoms):
    eps2 = random_formula(rng, atoms, 2, True)
    eps = _implied_evidence(rng, atoms, eps2)
    phi = random_formula(rng, atoms)
    lo, hi = _cover(rng, r.tight(phi, And(eps, eps2), s))
    applicable = _entails(r, s, eps, eps2, 1, 1) and _entails(r, s, phi, And(eps, eps2), lo, hi)
    holds = not applicable or _entails(r, s, phi, eps2, lo, hi)
    desc = _fmt(_cc(eps, eps2, 1, 1), _cc(phi, And(eps, eps2), lo, hi),
                f"conclusion {_cc(phi, eps2, lo, hi)}")
    return Check("Cut", applicable, holds, desc)


def check_cm(r, s, rng, atoms):
    eps2 = random_formula(rng, atoms, 2, True)
    eps = _implied_evidence(rng, atoms, eps2)
    phi = random_formula(rng, atoms)
    lo, hi = _cover(rng, r.tight(phi, eps2, s))
    applicable = _entails(r, s, eps, eps2, 1, 1) and _entails(r, s, phi, eps2, lo, hi)
    holds = not applicable or _entails(r, s, phi, And(eps, eps2), lo, hi)
    desc = _fmt(_cc(eps, eps2, 1, 1), _cc(phi, eps2, lo, hi),
                f"conclusion {_cc(phi, And(eps, eps2), lo, hi)}")
    return Check("CM", applicable, holds, desc)


def check_or(r, s, rng, atoms):
    eps = random_formula(rng, atoms, 2, True)
    eps2 = random_formula(rng, atoms, 2, True)
    phi = random_formula(rng, atoms)
    lo, hi = _cover(rng, r.tight(phi, eps, s).hull(r.tight(phi, eps2, s)))
    applicable = _entails(r, s, phi, eps, lo, hi) and _entails(r, s, phi, eps2, lo, hi)
    holds = not applicable or r.tight_disjunctive([eps, eps2], phi, s).within(lo, hi)
    desc = _fmt(_cc(phi, eps, lo, hi), _cc(phi, eps2, lo, hi),
                f"conclusion ({render(phi)}|{render(eps)} ; {render(eps2)})[{lo}, {hi}]")
    return Check("Or", applicable, holds, desc)


def check_rm(r, s, rng, atoms):
    eps = random_formula(rng, atoms, 2, True)
    eps2 = random_formula(rng, atoms, 2)
    psi = random_formula(rng, atoms)
    lo, hi = _cover(rng, r.tight(psi, eps, s))
    applicable = _entails(r, s, psi, eps, lo, hi) and not r.entails_negated(eps, eps2, s)
    holds = not applicable or _entails(r, s, psi, And(eps, eps2), lo, hi)
    desc = _fmt(_cc(psi, eps, lo, hi), f"not entailed: ~{_cc(eps2, eps, 1, 1)}",
                f"conclusion {_cc(psi, And(eps, eps2), lo, hi)}")
    return Check("RM", applicable, holds, desc)


def check_irr(r, s, rng, atoms, fresh=()):
    if not fresh:
        return Check("Irr", False, True, "no fresh atoms")
    eps = random_formula(rng, atoms, 2, True)
    psi = random_formula(rng, atoms)
    eps2 = random_formula(rng, list(fresh), 2)
    lo, hi = _cover(rng, r.tight(psi, eps, s))
    applicable = _entails(r, s, psi, eps, lo, hi)
    holds = not applicable or _entails(r, s, psi, And(eps, eps2), lo, hi)
    desc = _fmt(_cc(psi, eps, lo, hi), f"conclusion {_cc(psi, And(eps, eps2), lo, hi)}")
    return Check("Irr", applicable, holds, desc)


def check_di(r, s, rng, atoms):
    if not r.ground:
        return Check("DI", False, True, "empty program")
    c = rng.choice(r.ground)
    eps = _equivalent_variant(rng, c.antecedent)
    holds = _entails(r, s, c.consequent, eps, c.lower, c.upper)
    return Check("DI", True, holds, _fmt(f"member {render(c)}",
                                         f"conclusion {_cc(c.consequent, eps, c.lower, c.upper)}"))


POSTULATES = {
    "RW": check_rw, "Ref": check_ref, "LLE": check_lle, "Cut": check_cut,
    "CM": check_cm, "Or": check_or, "RM": check_rm, "Irr": check_irr, "DI": check_di,
}


def run_postulate(name, reasoner: Reasoner, semantics, rng: random.Random, atoms, fresh=()):
    fn = POSTULATES[name]
    if name == "Irr":
        return fn(reasoner, semantics, rng, atoms, fresh)
    return fn(reasoner, semantics, rng, atoms)
