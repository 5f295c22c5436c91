"""Shared pytest configuration: per-criterion pass/fail summary lines."""

CRITERIA = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    if "test_acceptance.py::test_criterion" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        CRITERIA[name] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERIA:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(CRITERIA):
        outcome = "PASS" if CRITERIA[name] == "passed" else "FAIL"
        terminalreporter.write_line(f"{outcome} {name}")
