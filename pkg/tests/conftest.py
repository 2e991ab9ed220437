import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")

ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def criterion():
    def record(name: str, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[name] = ("PASS" if ok else "FAIL") + (f"  {detail}" if detail else "")
        assert ok, f"{name}: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0].rstrip("."))):
        terminalreporter.write_line(f"{name}: {ACCEPTANCE[name]}")
