"""Collects the acceptance verdicts and prints them at the end of the run."""
import pytest

RESULTS = {}


@pytest.fixture
def acceptance(request):
    """Record one criterion: ``acceptance(k, description)`` before the checks run."""
    entry = {}

    def start(k, description):
        entry.update(k=k, description=description)

    yield start
    if entry:
        rep = getattr(request.node, "rep_call", None)
        RESULTS[entry["k"]] = (entry["description"], rep is not None and rep.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        description, ok = RESULTS[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {description}")
