"""Shared test plumbing: replay acceptance verdict lines after the run.

Default capture swallows per-test stdout for passing tests, so the
acceptance checks also register their verdict lines here and a terminal
summary section replays the full checklist.
"""

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
