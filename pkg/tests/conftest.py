import pytest

from tapestry.presentation import load_fixture
from tapestry.reps import enumerate_representations

FIXTURES = ["trefoil", "figure8", "kt_simplified", "j_minus1", "kt_wirtinger"]


@pytest.fixture(scope="session")
def pres():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fixture(name)
        return cache[name]
    return get


@pytest.fixture(scope="session")
def reps(pres):
    cache = {}

    def get(name, p, **kw):
        key = (name, p, tuple(sorted(kw.items())))
        if key not in cache:
            cache[key] = enumerate_representations(pres(name), p, **kw)
        return cache[key]
    return get


# acceptance criterion number -> (passed, detail); printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line("criterion %2d: %s  %s" % (n, "PASS" if ok else "FAIL", detail))
