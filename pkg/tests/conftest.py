import pytest

from coxkit.core import CoxeterSystem

REPORT: list[str] = []


def chain(n, labels=None, names="abcdefgh"):
    """Path a - b - c ... with the given edge labels (default 3)."""
    labels = labels or [3] * (n - 1)
    gens = list(names[:n])
    return CoxeterSystem(gens, {(gens[i], gens[i + 1]): m for i, m in enumerate(labels) if m != 2})


@pytest.fixture
def A2():
    return chain(2)


@pytest.fixture
def A3():
    return chain(3)


@pytest.fixture
def B3():
    return chain(3, [4, 3])


@pytest.fixture
def G2():
    return CoxeterSystem(["s", "t"], {("s", "t"): 6})


def pytest_terminal_summary(terminalreporter):
    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
