import sys
from pathlib import Path

import pytest

from rrtldv.geometry import HyperRect, World

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def w1():
    """d=2, bounds [0,10]^2, one obstacle [5,7]x[2,8]."""
    return World(HyperRect([0, 0], [10, 10]), (HyperRect([5, 2], [7, 8]),))


@pytest.fixture
def acceptance_report():
    def report(criterion: str, ok: bool, detail: str) -> None:
        line = f"[{'PASS' if ok else 'FAIL'}] {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
