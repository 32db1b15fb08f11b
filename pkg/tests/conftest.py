import pytest

ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion, shown in the terminal summary."""
    label = request.node.get_closest_marker("criterion").args[0]
    yield
    report = getattr(request.node, "rep_call", None)
    if report is not None:
        ACCEPTANCE_RESULTS.append(("PASS" if report.passed else "FAIL", label))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion label")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for status, label in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(f"{status}  {label}")
