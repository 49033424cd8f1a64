"""Shared pytest hooks: surface acceptance verdicts in the run summary.

Capture swallows per-test prints, so the acceptance tests record their
verdicts here and a terminal-summary hook writes one line per criterion
where it is always visible.
"""

VERDICTS: list[tuple[int, str, bool]] = []


def record_verdict(number: int, slug: str, ok: bool) -> None:
    VERDICTS.append((number, slug, ok))


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, slug, ok in sorted(VERDICTS):
        terminalreporter.write_line(
            f"ACCEPTANCE {number} {slug}: {'PASS' if ok else 'FAIL'}"
        )
