from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

# acceptance criteria register "PASS name" / "FAIL name" lines here
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def criterion(request):
    """Yields a recorder; the outcome line is written when the test finishes."""
    state = {"name": request.node.name, "detail": ""}

    def record(name: str, detail: str = "") -> None:
        state["name"], state["detail"] = name, detail

    yield record
    call = getattr(request.node, "rep_call", None)
    ok = call is not None and call.passed
    line = f"{'PASS' if ok else 'FAIL'}  {state['name']}"
    if state["detail"]:
        line += f"  ({state['detail']})"
    ACCEPTANCE_LINES.append(line)
    print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
