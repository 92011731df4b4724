import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def acceptance_log(request, capsys):
    """Record one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash[_LINES]

    def log(number, name, ok, residual):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {name}  residual={residual:.3e}"
        lines.append(line)
        with capsys.disabled():
            print("\n" + line)

    return log


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
