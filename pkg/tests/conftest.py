"""Shared pytest plumbing: collect acceptance verdict lines for the summary."""

verdict_lines = []


def record_verdict(number: int, ok: bool, detail: str) -> None:
    line = f"[criterion {number}] {'PASS' if ok else 'FAIL'} — {detail}"
    verdict_lines.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if verdict_lines:
        terminalreporter.section("acceptance criteria")
        for line in verdict_lines:
            terminalreporter.write_line(line)
