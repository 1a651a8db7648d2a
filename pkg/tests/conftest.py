"""Shared pytest plumbing.

Acceptance tests register one human-readable PASS/FAIL line each; the
terminal-summary hook prints them as a block at the end of the run so
the gate status is visible without scrolling through the test list.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(name: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    suffix = f" ({detail})" if detail else ""
    ACCEPTANCE_LINES.append(f"ACCEPTANCE {name}: {status}{suffix}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria", sep="-")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
