"""Shared pytest wiring.

The acceptance tests register one summary line per criterion via
``record_criterion``; the hook below reprints them after the run, so the
checklist is visible even though pytest captures stdout of passing tests.
"""

_criterion_lines = []


def record_criterion(line: str) -> None:
    _criterion_lines.append(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _criterion_lines:
        return
    # keep the latest line per criterion number, in numeric order
    latest = {line.split()[1]: line for line in _criterion_lines}
    terminalreporter.section("acceptance criteria")
    for number in sorted(latest):
        terminalreporter.write_line(latest[number])
