import math
import re

import pytest

from halfweyl.core import UpperHalfPoint

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


@pytest.fixture(scope="session")
def lambda_grid():
    angles = (math.pi / 6, math.pi / 2, 3 * math.pi / 4, 0.9 * math.pi)
    return [UpperHalfPoint(r, phi) for r in (0.25, 1.0, 4.0) for phi in angles]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        def number(line):
            return int(re.search(r"criterion (\d+)", line).group(1))

        for line in sorted(ACCEPTANCE_LINES, key=number):
            terminalreporter.write_line(line)
