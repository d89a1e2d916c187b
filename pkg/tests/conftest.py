import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {detail}")


@pytest.fixture
def r1_ambient():
    from fmstab import AmbientData

    return AmbientData(rank=1, generators=((1,),), B=(1,), J=(2,), L=(1,), H=(3,))


@pytest.fixture
def r1_param(r1_ambient):
    from fmstab import parameter_from_ambient

    return parameter_from_ambient(r1_ambient)
