import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from plpinherit.ground import HerbrandBase  # noqa: E402
from plpinherit.syntax import Atom, parse_formula, parse_program, parse_query  # noqa: E402
from plpinherit.worlds import enumerate_worlds  # noqa: E402

BIRDS = "(b(X)|p(X))[1,1]. (l(X)|b(X))[0.95,1]."
FLYING = BIRDS + " (f(X)|b(X))[0.9,0.95]. (f(X)|p(X))[0,0.05]."
MAGPIES = "(b(X)|m(X))[1,1]. (c(X)|b(X))[0.7,0.8]. (c(X)|m(X))[0,0.99]."
CLASH = "(p|true)[0.3,0.4]. (p|true)[0.6,0.7]."

TWEETY_Q = "?(l(tweety)|p(tweety))[R,S]."
SAM_Q = "?(c(sam)|m(sam))[R,S]."


def ground_text(text, const):
    return text.replace("(X)", f"({const})")


def space(*names):
    return enumerate_worlds(HerbrandBase(tuple(Atom(n) for n in names)))


def f(text):
    return parse_formula(text)


@pytest.fixture
def birds():
    return parse_program(BIRDS)


@pytest.fixture
def flying():
    return parse_program(FLYING)


@pytest.fixture
def magpies():
    return parse_program(MAGPIES)


@pytest.fixture
def tweety_q():
    return parse_query(TWEETY_Q)


@pytest.fixture
def sam_q():
    return parse_query(SAM_Q)


def pytest_terminal_summary(terminalreporter):
    from acceptance_registry import RESULTS, line

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(line(number))
