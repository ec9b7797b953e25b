from __future__ import annotations

import sys

import pytest

from zetareg.mpcore import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext()


@pytest.fixture(scope="session")
def mp(ctx):
    return ctx.mp


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    report = getattr(mod, "REPORT", None)
    if report:
        terminalreporter.section("acceptance criteria")
        for line in sorted(report, key=lambda s: int(s[1:3])):
            terminalreporter.write_line(line)
