import pytest

ACCEPTANCE_LINES = pytest.StashKey[list]()


@pytest.fixture
def acceptance_line(request):
    """Record one summary line per acceptance criterion."""
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, [])
    return lines.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
