import pytest

_LINES = pytest.StashKey[list]()


@pytest.fixture
def acceptance_report(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    store = request.config.stash.setdefault(_LINES, [])

    def report(number, title, ok, detail=""):
        line = f"criterion {number} [{title}]: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        print(line)
        store.append(line)
        return ok

    return report


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
