import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}
_outcomes = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    report = (yield).get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    number, title = marker.args
    _criteria[number] = title
    details = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    _outcomes[number].append((item.name, report.passed, details))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = _outcomes[number]
        ok = all(passed for _, passed, _ in results)
        tr.line(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {_criteria[number]}")
        for name, passed, details in results:
            if details or not passed:
                tr.line(f"    {'ok  ' if passed else 'FAIL'} {name}: {details}")
