"""One test per acceptance criterion; each prints its pass/fail line."""

import pytest

from splitcircle.oracle import OracleConfig
from splitcircle.selfcheck import CHECKS, Suite

# lines collected for the terminal summary in conftest.py
RESULT_LINES: list[str] = []


@pytest.fixture(scope="module")
def suite():
    return Suite(OracleConfig.from_env(), seed=0)


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i}" for i in range(1, len(CHECKS) + 1)])
def test_criterion(check, suite):
    res = check(suite)
    print(res.line())
    RESULT_LINES.append(res.line())
    assert res.passed, res.line()
