import pytest

# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_line(capsys):
    def emit(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES.append(line)
        with capsys.disabled():
            print(f"\n{line}")
    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
