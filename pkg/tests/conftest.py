import random

import pytest

_ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def criterion():
    """record(n, ok, detail): one summary line per acceptance criterion."""

    def record(n: int, ok: bool, detail: str = "") -> None:
        line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}"
        _ACCEPTANCE[n] = f"{line}  {detail}" if detail else line
        print(_ACCEPTANCE[n])

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[n])
