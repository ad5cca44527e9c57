import random

import pytest

# label -> (passed, detail); filled by the acceptance module
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0)


@pytest.fixture
def record():
    def _record(label: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[label] = (passed, detail)
        print(f"[{'PASS' if passed else 'FAIL'}] {label} {detail}".rstrip())

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for label in sorted(ACCEPTANCE, key=lambda s: int(s.split(":")[0])):
        passed, detail = ACCEPTANCE[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}".rstrip())
