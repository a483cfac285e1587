import pytest

# criterion id -> (title, passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS = {}


@pytest.fixture
def acceptance_record():
    def record(number, title, passed, detail=""):
        ACCEPTANCE_RESULTS[number] = (title, bool(passed), detail)
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, passed, detail = ACCEPTANCE_RESULTS[number]
        line = f"[{'PASS' if passed else 'FAIL'}] {number:>2}. {title}"
        if detail:
            line += f" -- {detail}"
        terminalreporter.write_line(line)
