import pytest

_verdicts: dict[str, str] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call" and not rep.failed:
        return
    name = marker.args[0]
    if rep.failed:
        _verdicts[name] = "FAIL"
    else:
        _verdicts.setdefault(name, "PASS")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion covered by a test")


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_verdicts, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{_verdicts[name]}  {name}")
