import pytest

from cartmatch.testkit import default_seed

PRICE_TEXT = (41, 36, 15, 8, 41, 23, 28, 16, 26, 22, 56, 29, 12, 61)
HEAD_AND_SHOULDERS = (6, 2, 5, 1, 4, 3, 7)
THREE_PATTERNS = [(4, 2, 3, 1, 5), (3, 1, 4, 2), (1, 2, 3, 5, 4)]
INDEX_TEXT = (2, 7, 5, 6, 4, 3, 11, 9, 10, 8, 1)

_criteria: list[tuple[str, bool, str]] = []


@pytest.fixture
def seed():
    return default_seed()


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test body must call the returned function."""
    recorded = {}

    def record(name, detail=""):
        recorded["line"] = (name, detail)

    yield record
    if "line" in recorded:
        name, detail = recorded["line"]
        failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else True
        _criteria.append((name, not failed, detail))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _criteria:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {name}" + (f"  ({detail})" if detail else ""))
