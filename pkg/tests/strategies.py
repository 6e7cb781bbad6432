"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from plpinherit.syntax import (
    BOTTOM, TOP, And, Atom, ConditionalConstraint, Const, Not, Var,
)

names = st.sampled_from(["a", "b", "c", "bird", "p2"])
consts = st.sampled_from(["tweety", "sam", "x1"]).map(Const)
variables = st.sampled_from(["X", "Y", "Who", "_z"]).map(Var)
terms = st.one_of(consts, variables)


@st.composite
def atoms(draw):
    pred = draw(names)
    # arity is a function of the predicate so generated programs stay well-typed
    arity = {"a": 0, "b": 0, "c": 1, "bird": 1, "p2": 2}[pred]
    return Atom(pred, tuple(draw(terms) for _ in range(arity)))


formulas = st.recursive(
    st.one_of(atoms(), st.just(TOP), st.just(BOTTOM)),
    lambda sub: st.one_of(sub.map(Not), st.tuples(sub, sub).map(lambda t: And(*t))),
    max_leaves=6,
)

grid = st.integers(0, 20).map(lambda k: Fraction(k, 20))


@st.composite
def constraints(draw):
    lo, hi = sorted((draw(grid), draw(grid)))
    return ConditionalConstraint(draw(formulas), draw(formulas), lo, hi)
