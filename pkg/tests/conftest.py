import _support


def pytest_terminal_summary(terminalreporter):
    if _support.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in _support.RESULTS:
            terminalreporter.write_line(line)
