import os

import pytest

LONG_RUN = os.environ.get("FROBENIUS_LONG_RUN") == "1"

_criteria: list[tuple[str, str, str]] = []


@pytest.fixture
def criterion():
    """Record an acceptance result; failing results also fail the test."""

    def record(label: str, ok: bool, detail: str = "") -> None:
        _criteria.append(("PASS" if ok else "FAIL", label, detail))
        assert ok, f"{label}: {detail}"

    def skip(label: str, why: str) -> None:
        _criteria.append(("SKIP", label, why))
        pytest.skip(why)

    record.skip = skip
    return record


def pytest_collection_modifyitems(config, items):
    if LONG_RUN:
        return
    marker = pytest.mark.skip(reason="long-run job; set FROBENIUS_LONG_RUN=1")
    for item in items:
        if "long_run" in item.keywords:
            item.add_marker(marker)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for status, label, detail in _criteria:
        terminalreporter.write_line(f"{status}  {label}" + (f"  [{detail}]" if detail else ""))
