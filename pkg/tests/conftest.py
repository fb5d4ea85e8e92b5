import os
import random

import pytest

SEED = int(os.environ.get("SEMIGROUPOID_KIT_SEED", "20260819"))


def pytest_report_header(config):
    return f"semigroupoid-kit random seed: {SEED} (override with SEMIGROUPOID_KIT_SEED)"


def pytest_terminal_summary(terminalreporter):
    import acceptance_report

    if acceptance_report.LINES:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_report.LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def fig1():
    from semigroupoid_kit import looped_triangle

    return looped_triangle()
