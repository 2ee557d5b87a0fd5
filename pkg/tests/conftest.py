from __future__ import annotations

import pytest

import acceptance_log as log


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): test backing acceptance criterion n")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        if call.excinfo is None:
            outcome = "passed"
        elif call.excinfo.errisinstance(pytest.skip.Exception):
            outcome = "skipped"
        else:
            outcome = "failed"
        log.outcomes[marker.args[0]].append(outcome)


def pytest_terminal_summary(terminalreporter):
    if not log.outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k, title in log.TITLES.items():
        seen = log.outcomes.get(k)
        if not seen:
            status = "NOT RUN"
        elif "failed" in seen:
            status = "FAIL"
        elif all(s == "skipped" for s in seen):
            status = "SKIP"
        else:
            status = "PASS"
        tr.write_line(f"criterion {k:2d}: {status:7s} {title}")
        for text in log.notes.get(k, []):
            tr.write_line(f"               {text}")
