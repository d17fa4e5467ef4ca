import pytest

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    key, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _CRITERIA[key] = (title, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_CRITERIA):
        title, passed = _CRITERIA[key]
        terminalreporter.write_line(f"{key}: {'PASS' if passed else 'FAIL'}  {title}")
