from __future__ import annotations

import pytest

# label -> (ok, detail); filled by the acceptance tests, printed at the end of the run
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(label: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE[label] = (ok, detail)
        print(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label, (ok, detail) in ACCEPTANCE.items():
        line = f"{'PASS' if ok else 'FAIL'}  {label}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
