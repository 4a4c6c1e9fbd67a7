"""Shared pytest plumbing.

The acceptance suite records one labelled verdict line per criterion; the
collected lines are echoed in their own section after the run so the
verdicts are visible regardless of output capturing.
"""

ACCEPTANCE_LINES: list[str] = []


def record_verdict(criterion: str, ok: bool, detail: str) -> None:
    line = f"[criterion {criterion}] {detail}: {'PASS' if ok else 'FAIL'}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
