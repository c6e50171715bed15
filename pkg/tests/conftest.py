"""Collects acceptance outcomes and prints one PASS/FAIL line per criterion."""

import pytest

_results: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            number, title = mark.args
            _results.setdefault(number, {"title": title, "outcomes": [], "details": []})


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    entry = _results[mark.args[0]]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        entry["outcomes"].append((item.name, report.outcome))
        entry["details"].extend(v for k, v in item.user_properties if k == "detail")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_results):
        entry = _results[number]
        outs = entry["outcomes"]
        if not outs:
            status = "NOT RUN"
        elif all(o == "passed" for _, o in outs):
            status = "PASS"
        else:
            status = "FAIL"
        failed = [name for name, o in outs if o != "passed"]
        line = f"criterion {number} {status:<7} {entry['title']}"
        if entry["details"]:
            line += " | " + "; ".join(entry["details"])
        if failed:
            line += " | failing: " + ", ".join(failed)
        tr.write_line(line)
