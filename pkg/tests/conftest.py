import pytest

CRITERIA: dict[int, bool] = {}
TITLES: dict[int, str] = {}


def record(number: int, title: str, passed: bool) -> None:
    TITLES[number] = title
    CRITERIA[number] = CRITERIA.get(number, True) and passed


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance test under its criterion number."""
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    yield
    failed = getattr(request.node, "_call_failed", True)
    record(number, title, not failed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item._call_failed = report.failed


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        status = "PASS" if CRITERIA[n] else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {TITLES[n]}")
