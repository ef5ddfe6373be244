import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Print one pass/fail line for an acceptance criterion and keep it for the summary."""

    def emit(number: int, ok: bool, detail: str):
        line = f"acceptance {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
