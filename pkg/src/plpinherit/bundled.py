"""Bundled example programs with their known tight answers, used by ``selftest``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .syntax import parse_program, parse_query

F = Fraction


@dataclass(frozen=True)
class Case:
    program: str        # file name under plpinherit/data
    query: str
    semantics: str
    expected: tuple | None   # (lower, upper); None = informational row
    note: str = ""


DROWNING_NOTE = ("the (l|b) default sits on the violated level and is not inherited "
                 "(drowning); lex keeps it and gives [19/20, 1]")

CASES = (
    Case("birds_legs.plp", "?(l(tweety)|p(tweety))[R,S].", "0", (F(0), F(1))),
    Case("birds_legs.plp", "?(l(tweety)|p(tweety))[R,S].", "1", (F(19, 20), F(1))),
    Case("birds_legs.plp", "?(l(tweety)|p(tweety))[R,S].", "z", (F(19, 20), F(1))),
    Case("birds_legs.plp", "?(l(tweety)|p(tweety))[R,S].", "lex", (F(19, 20), F(1))),
    Case("birds_flying.plp", "?(l(tweety)|p(tweety))[R,S].", "0", (F(0), F(1))),
    Case("birds_flying.plp", "?(l(tweety)|p(tweety))[R,S].", "1", (F(1), F(0))),
    Case("birds_flying.plp", "?(l(tweety)|p(tweety))[R,S].", "z", None, DROWNING_NOTE),
    Case("birds_flying.plp", "?(l(tweety)|p(tweety))[R,S].", "lex", (F(19, 20), F(1))),
    Case("magpies.plp", "?(c(sam)|m(sam))[R,S].", "0", (F(0), F(99, 100))),
    Case("magpies.plp", "?(c(sam)|m(sam))[R,S].", "1", (F(7, 10), F(8, 10))),
    Case("magpies.plp", "?(c(sam)|m(sam))[R,S].", "z", (F(7, 10), F(8, 10))),
    Case("magpies.plp", "?(c(sam)|m(sam))[R,S].", "lex", (F(7, 10), F(8, 10))),
)

CONSISTENCY = (
    ("birds_legs.plp", True),
    ("birds_flying.plp", True),
    ("magpies.plp", True),
    ("clash.plp", False),
)


def program_text(name: str) -> str:
    return resources.files("plpinherit.data").joinpath(name).read_text()


def load(name: str):
    return parse_program(program_text(name))


def load_case(case: Case):
    return load(case.program), parse_query(case.query)
