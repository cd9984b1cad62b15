import functools

import pytest

from bireversible import fixtures
from bireversible.quaternions import lattice_automaton

CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not (rep.when == "setup" and rep.failed):
        return
    n = mark.args[0]
    ok = CRITERIA.get(n, (True, []))[0] and rep.passed
    names = CRITERIA.get(n, (True, []))[1] + [(item.name, rep.outcome)]
    CRITERIA[n] = (ok, names)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, names = CRITERIA[n]
        failed = [name for name, outcome in names if outcome != "passed"]
        tail = f" ({', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}{tail}")


@functools.lru_cache(maxsize=None)
def lattice(p, l):
    return lattice_automaton(p, l)


@pytest.fixture(scope="session")
def lattice_5_13():
    return lattice(5, 13)


@pytest.fixture(params=sorted(fixtures.FIXTURES))
def fixture_automaton(request):
    return fixtures.FIXTURES[request.param]()


def bar_pairing(a):
    names = a.state_labels
    return tuple(names.index(n[:-2] if n.endswith("^-") else n + "^-") for n in names)
