import mpmath as mp
import pytest

#: one line per acceptance criterion, echoed in the terminal summary
CRITERIA: list = []


@pytest.fixture
def dps50():
    with mp.workdps(50):
        yield 50


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)
