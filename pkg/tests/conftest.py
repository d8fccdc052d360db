import sys

import pytest

from simplex_mutator.corpus import generate_corpus
from simplex_mutator.simplex import validate_fano

P1113 = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -3)]
P1148 = [(1, -1, 0), (-2, -2, -1), (-2, -2, 1), (0, 1, 0)]
P2 = [(1, 0), (0, 1), (-1, -1)]


@pytest.fixture(scope="session")
def corpus():
    return generate_corpus()


@pytest.fixture
def p1113():
    return validate_fano(P1113)


@pytest.fixture
def p1148():
    return validate_fano(P1148)


@pytest.fixture
def p2():
    return validate_fano(P2)



def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        title, ok, detail = results[num]
        line = f"{'PASS' if ok else 'FAIL'}  criterion {num:>2}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
