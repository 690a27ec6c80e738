import pytest

from acceptance_log import LINES as ACCEPTANCE_LINES
from anchorpack.geometry import Instance, Point
from anchorpack.instances import gen_random

SAMPLE_POINTS = (
    Point(0.0, 0.0),
    Point(0.6, 0.9),
    Point(0.65, 0.65),
    Point(0.75, 0.3),
    Point(0.3, 0.7),
    Point(0.1, 0.85),
    Point(0.55, 0.1),
    Point(0.2, 0.35),
)



@pytest.fixture(scope="session")
def sample8() -> Instance:
    return Instance(SAMPLE_POINTS)


@pytest.fixture(scope="session")
def uniform_instances() -> list[Instance]:
    """1000 seeded uniform instances with n cycling through 2..50."""
    return [gen_random(2 + seed % 49, seed) for seed in range(1000)]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    missing = set(range(1, 12)) - set(ACCEPTANCE_LINES)
    for k in missing:
        ACCEPTANCE_LINES[k] = f"ACCEPTANCE {k:2d} NOT RUN"
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
