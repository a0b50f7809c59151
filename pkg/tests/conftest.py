import pytest

_verdicts: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion under test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    key = f"{mark.args[0]:>2}. {mark.args[1]}"
    if report.failed:
        _verdicts[key] = "FAIL"
    elif report.when == "call":
        _verdicts.setdefault(key, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_verdicts, key=lambda k: int(k.split(".")[0])):
        terminalreporter.write_line(f"{_verdicts[key]}  {key}")
