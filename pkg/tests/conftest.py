import pytest

CRITERIA = {}


@pytest.fixture
def criterion(request):
    """Record a single pass/fail line for an acceptance criterion.

    The test calls ``criterion(name, ok, detail)`` exactly once; the line is
    printed in the terminal summary and the test fails when ``ok`` is false.
    """
    def record(name, ok, detail=""):
        CRITERIA[name] = (bool(ok), detail)
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in CRITERIA.items():
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
