from __future__ import annotations

import pytest

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--run-stretch", action="store_true", default=False, help="run long stretch checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-stretch"):
        return
    skip = pytest.mark.skip(reason="stretch check; pass --run-stretch")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)


@pytest.fixture
def acceptance():
    """Record a criterion line; it is echoed immediately and in the summary.
    ``ok=None`` marks an information line."""

    def record(name: str, ok: bool | None, detail: str) -> None:
        status = "INFO" if ok is None else "PASS" if ok else "FAIL"
        line = f"{status} {name}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record
