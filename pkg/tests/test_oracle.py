import random
from fractions import Fraction

import pytest

from plpinherit.defaults import Reasoner, Semantics
from plpinherit.errors import OracleCapError
from plpinherit.logical import Interval
from plpinherit.oracle import (
    atom_names, lex_preferable, minimal_sets_bruteforce, random_consistent_program,
    random_formula, random_program, tight_consequence_oracle, z_preferable,
)
from plpinherit.syntax import TOP, ConditionalConstraint, parse_constraint, parse_program

from conftest import FLYING, MAGPIES, f, ground_text

F = Fraction


def flying():
    return Reasoner(parse_program(ground_text(FLYING, "t")))


class TestPreferences:
    levels = (("d0", "e0"), ("d1",))

    def test_z(self):
        full1 = frozenset({"d1"})
        assert z_preferable(full1, frozenset({"d0", "e0"}), self.levels)
        assert not z_preferable(frozenset({"d0", "e0"}), full1, self.levels)
        assert z_preferable(frozenset({"d1", "d0", "e0"}), frozenset({"d1", "d0"}), self.levels)
        # z ignores partial levels
        assert not z_preferable(frozenset({"d1", "d0"}), full1, self.levels)

    def test_lex(self):
        assert lex_preferable(frozenset({"d1", "d0"}), frozenset({"d1"}), self.levels)
        assert lex_preferable(frozenset({"d1"}), frozenset({"d0", "e0"}), self.levels)
        assert not lex_preferable(frozenset({"d1", "d0"}), frozenset({"d1", "e0"}), self.levels)

    def test_irreflexive(self):
        g = frozenset({"d0", "d1"})
        assert not z_preferable(g, g, self.levels) and not lex_preferable(g, g, self.levels)


class TestFamilies:
    def test_flying_lex(self):
        r = flying()
        fam = minimal_sets_bruteforce(r.theory, r.partition, f("p(t)"), "lex", r.engine)
        assert fam.sets == [frozenset({parse_constraint("(f(t)|p(t))[0,1/20]"),
                                       parse_constraint("(l(t)|b(t))[19/20,1]")})]

    def test_no_defaults(self):
        r = Reasoner(parse_program("(b|a)[1,1]."))
        fam = minimal_sets_bruteforce(r.theory, r.partition, f("a"), Semantics.Z, r.engine)
        assert fam.sets == [frozenset()]

    def test_unsatisfiable_evidence(self):
        r = Reasoner(parse_program("(c|a)[0,0]. (b|a)[0.5,1]."))
        fam = minimal_sets_bruteforce(r.theory, r.partition, f("a & c"), "z", r.engine)
        assert len(fam) == 0
        assert tight_consequence_oracle(r.theory, r.partition, f("b"), f("a & c"), "z",
                                        r.engine).is_empty

    def test_cap(self):
        r = flying()
        with pytest.raises(OracleCapError):
            minimal_sets_bruteforce(r.theory, r.partition, f("p(t)"), "z", r.engine, cap=2)

    def test_only_nonmonotonic(self):
        r = flying()
        with pytest.raises(ValueError):
            minimal_sets_bruteforce(r.theory, r.partition, f("p(t)"), "0", r.engine)

    def test_bundled_values(self):
        r = flying()
        assert tight_consequence_oracle(r.theory, r.partition, f("l(t)"), f("p(t)"), "lex",
                                        r.engine) == Interval(F(19, 20), 1)
        m = Reasoner(parse_program(ground_text(MAGPIES, "s")))
        assert tight_consequence_oracle(m.theory, m.partition, f("c(s)"), f("m(s)"), "z",
                                        m.engine) == Interval(F(7, 10), F(8, 10))

    @pytest.mark.parametrize("sem", ["z", "lex"])
    @pytest.mark.parametrize("seed", range(30))
    def test_family_correctness(self, sem, seed):
        prog, _ = random_consistent_program(seed, n_atoms=4, n_defaults=4)
        r = Reasoner(prog, atoms=atom_names(4))
        alpha = random_formula(random.Random(seed), atom_names(4), 2, True)
        S, D = r.theory
        R = S + (ConditionalConstraint(alpha, TOP, 1, 1),)
        fam = minimal_sets_bruteforce(r.theory, r.partition, alpha, sem, r.engine)
        prefer = {"z": z_preferable, "lex": lex_preferable}[sem]
        levels = r.partition.levels
        for H, witness in fam.members:
            assert r.engine.satisfiable(R + tuple(H))[0]
            assert witness is not None
        for bits in range(1 << len(D)):
            H = frozenset(d for i, d in enumerate(D) if bits >> i & 1)
            if H in fam.sets or not r.engine.satisfiable(R + tuple(H))[0]:
                continue
            assert any(prefer(G, H, levels) for G in fam.sets)

    @pytest.mark.parametrize("seed", range(30))
    def test_z_family_structure(self, seed):
        prog, _ = random_consistent_program(seed, n_atoms=4, n_defaults=4)
        r = Reasoner(prog, atoms=atom_names(4))
        alpha = random_formula(random.Random(seed), atom_names(4), 2, True)
        fam = minimal_sets_bruteforce(r.theory, r.partition, alpha, "z", r.engine)
        staged = r.minimal_systems(alpha, "z")
        if not staged:
            assert len(fam) == 0
            return
        kept = set(staged[0]) - set(r.theory.strict)
        assert all(kept <= H for H in fam.sets)
        # hence the union of the family's model sets is the model set of the staged system
        beta = random_formula(random.Random(seed + 1), atom_names(4))
        assert tight_consequence_oracle(r.theory, r.partition, beta, alpha, "z", r.engine) \
            == r.tight(beta, alpha, "z")


class TestRandomPrograms:
    def test_deterministic(self):
        assert random_program(1, 3, 3) == random_program(1, 3, 3)
        assert random_program(1, 3, 3) != random_program(2, 3, 3)

    def test_granularity(self):
        allowed = {F(k, 4) for k in range(5)}
        for seed in range(50):
            for c in random_program(seed, 4, 5, granularity=4):
                assert c.lower in allowed and c.upper in allowed

    def test_shape(self):
        for seed in range(50):
            p = random_program(seed, 3, 4)
            r = Reasoner(p, atoms=atom_names(3))
            assert len(r.theory.defaults) == 4
            assert all(a.predicate.startswith("a") and not a.args for a in r.ws.base)

    def test_consistent_filter(self):
        prog, tries = random_consistent_program(7, n_atoms=5, n_defaults=6)
        assert tries >= 1 and Reasoner(prog, atoms=atom_names(5)).consistent
        assert random_consistent_program(7, n_atoms=5, n_defaults=6) == (prog, tries)
