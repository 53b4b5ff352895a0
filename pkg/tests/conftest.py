import os
import random

import pytest

ACCEPTANCE_LINES: list[str] = []


def seed() -> int:
    return int(os.environ.get("SIGMA_ARTIN_SEED", "20260101"))


@pytest.fixture
def rng():
    return random.Random(seed())


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
