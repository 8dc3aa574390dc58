import random

import pytest

from simplexbound.multipoly import parse_poly


@pytest.fixture
def worked():
    """P = 2 X1^2 - 2 X1 + 1: the 2x2 instance that every layer is checked on."""
    return parse_poly("2*X1^2 - 2*X1 + 1")


@pytest.fixture
def rng():
    return random.Random(1234)


_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    """Record a one-line verdict for the acceptance summary."""
    def record(number, title, passed, detail=""):
        status = "PASS" if passed else "FAIL"
        line = f"[{status}] criterion {number}: {title}"
        _ACCEPTANCE_LINES.append(line + (f" ({detail})" if detail else ""))
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
