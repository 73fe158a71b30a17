from __future__ import annotations

# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
