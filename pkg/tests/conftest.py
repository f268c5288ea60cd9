from functools import lru_cache

import pytest

from tautilt.graph import build_mutation_quiver, tilting_subquiver
from tautilt.indec import enumerate_indecomposables
from tautilt.quiver import preset


@lru_cache(maxsize=None)
def pool_for(name, depth=None):
    return enumerate_indecomposables(preset(name), depth=depth)


@lru_cache(maxsize=None)
def quiver_for(name, depth=None):
    mq = build_mutation_quiver(pool_for(name, depth), depth=depth)
    return mq, tilting_subquiver(mq)


@pytest.fixture
def a2():
    return pool_for("A2")


@pytest.fixture
def a3():
    return pool_for("A3")


@pytest.fixture
def k2():
    return pool_for("K2", 5)


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion, ok, detail=""):
    ACCEPTANCE[criterion] = (bool(ok), detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
