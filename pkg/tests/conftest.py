"""Shared fixtures and acceptance-line reporting."""

import pytest

from pgopt import Topology


@pytest.fixture
def line5() -> Topology:
    return Topology.line(5)


@pytest.fixture
def grid33() -> Topology:
    return Topology.grid(3, 3)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one pass/fail line per acceptance test."""
    results = {}
    for status, label in (("passed", "PASSED"), ("failed", "FAILED"), ("error", "FAILED")):
        for report in terminalreporter.stats.get(status, ()):
            if getattr(report, "when", "call") != "call" and status != "error":
                continue
            if "test_acceptance.py" in report.nodeid:
                name = report.nodeid.split("::")[-1]
                results.setdefault(name, label)
    if results:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name in sorted(results):
            terminalreporter.write_line(f"ACCEPTANCE {name}: {results[name]}")
