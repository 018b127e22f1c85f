import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from seqbid import OpponentBidModel, two_item_example  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture
def fig1():
    return two_item_example()


@pytest.fixture
def fig1_model():
    return OpponentBidModel((1, 2), (0.5, 0.5))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
