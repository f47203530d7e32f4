import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance.py" not in report.nodeid:
        return
    label = dict(report.user_properties).get("criterion")
    if label:
        status = "PASS" if report.passed else "FAIL"
        ACCEPTANCE_LINES[label] = f"{status}  {label}  ({report.duration:.1f}s)"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: int(k.split(".")[0])):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
