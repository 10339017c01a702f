import pytest

from multispinal.documents import load_instance

from tests.helpers import ACCEPTANCE_RESULTS


@pytest.fixture(scope="session")
def grig():
    return load_instance("grigorchuk.json")


@pytest.fixture(scope="session")
def nonsimple():
    return load_instance("nonsimple-variant.json")


@pytest.fixture(scope="session")
def z3():
    return load_instance("z3xz3.json")


@pytest.fixture(scope="session")
def fixtures(grig, nonsimple, z3):
    return {"grigorchuk": grig, "nonsimple-variant": nonsimple, "z3xz3": z3}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        desc, ok = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {desc}")
