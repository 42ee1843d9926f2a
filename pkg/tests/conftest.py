import pytest

# criterion number -> (status, title, measured values)
_CRITERIA: dict[int, tuple[str, str, list[str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def measured(request):
    """List of 'name=value' notes printed next to the criterion's verdict."""
    notes: list[str] = []
    request.node.measured_notes = notes
    return notes


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title = mark.args
        status = "PASS" if rep.passed else "SKIP" if rep.skipped else "FAIL"
        _CRITERIA[number] = (status, title, getattr(item, "measured_notes", []))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, title, notes = _CRITERIA[number]
        line = f"{status} criterion {number:2d}: {title}"
        if notes:
            line += "  [" + ", ".join(notes) + "]"
        terminalreporter.write_line(line)
