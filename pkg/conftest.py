"""Repo-wide acceptance pass/fail reporter."""

from __future__ import annotations

_acceptance_results = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.nodeid.split("::")[0]:
        name = report.nodeid.split("::")[-1]
        _acceptance_results.append((name, report.passed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    # one visible PASS/FAIL line per acceptance criterion
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in _acceptance_results:
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'}")
