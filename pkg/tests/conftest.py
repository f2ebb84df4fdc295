import pytest

_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record the outcome of one acceptance criterion for the terminal summary."""
    def record(number: int, passed: bool, detail: str):
        _ACCEPTANCE[number] = (passed, detail)
        assert passed, f"criterion {number}: {detail}"
    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        passed, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(
            f"[criterion {number:2d}] {'PASS' if passed else 'FAIL'}  {detail}")
