import pytest

ACCEPTANCE_LINES: dict[str, str] = {}


def pytest_addoption(parser):
    parser.addoption("--skip-slow", action="store_true", help="skip 10_152 in the table criterion")


@pytest.fixture
def skip_slow(request):
    return request.config.getoption("--skip-slow")


@pytest.fixture
def record():
    def _record(key: str, ok: bool, text: str) -> None:
        ACCEPTANCE_LINES[key] = f"{'PASS' if ok else 'FAIL'} {text}"
        print(ACCEPTANCE_LINES[key])

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
