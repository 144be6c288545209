import contextlib

ACCEPTANCE = []


@contextlib.contextmanager
def criterion(label):
    """Record one acceptance line; the body's assertion decides PASS or FAIL."""
    details = []
    try:
        yield details
    except AssertionError:
        ACCEPTANCE.append(f"FAIL  {label}  {'; '.join(details)}")
        raise
    ACCEPTANCE.append(f"PASS  {label}  {'; '.join(details)}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
