import pytest

from splitcircle.oracle import OracleConfig
from splitcircle.split import anchor_graph


@pytest.fixture
def tent():
    return anchor_graph("Tent")


@pytest.fixture
def cfg():
    return OracleConfig()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULT_LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
