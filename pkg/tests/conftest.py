import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_criteria: list[str] = []


class CriterionReporter:
    def __init__(self, name: str) -> None:
        self.name = name
        self.details: list[str] = []

    def note(self, msg: str) -> None:
        self.details.append(msg)


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    label = marker.args[0] if marker else request.node.name
    rep = CriterionReporter(label)
    yield rep
    call = getattr(request.node, "rep_call", None)
    status = "PASS" if call is not None and call.passed else "FAIL"
    line = f"{status}  {label}"
    if rep.details:
        line += "  [" + "; ".join(rep.details) + "]"
    _criteria.append(line)
    print("\n" + line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item.rep_call = report



def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for line in _criteria:
            terminalreporter.write_line(line)
