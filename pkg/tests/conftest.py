import os
import time
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from coxkit import fixtures
from coxkit.diagram import INF, CoxeterDiagram, parse_diagram

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

DATA = Path(__file__).parent / "data"


def chain(labels, t=None, names=None):
    """Path diagram with consecutive labels; generators s1, s2, ..."""
    n = len(labels) + 1
    names = names or [f"s{i + 1}" for i in range(n)]
    edges = [(names[i], names[i + 1], m) for i, m in enumerate(labels)]
    return CoxeterDiagram.from_edges(names, edges, t=t)


@pytest.fixture(scope="session")
def example():
    return parse_diagram(fixtures.data_text(fixtures.EXAMPLE_DIAGRAM))


@pytest.fixture
def b2():
    return chain([4], t=["s1"])


@pytest.fixture
def b3():
    return chain([4, 3], t=["s1"])


@pytest.fixture
def dinf():
    return CoxeterDiagram.from_edges(["t", "s"], [("t", "s", INF)], t=["t"])


@pytest.fixture
def a1a1():
    return CoxeterDiagram.from_edges(["t", "s"], [], t=["t"])


@pytest.fixture(scope="session")
def small_nerve_sweep():
    from .sweep import nerve_sweep

    return nerve_sweep(5)


# -- acceptance reporting ----------------------------------------------------------
# Tests marked ``criterion(n)`` are grouped by n and reported as one line each.

_OUTCOMES = {}
_SESSION = {}
SUITE_BUDGET = 120.0


def pytest_sessionstart(session):
    _SESSION["start"] = time.perf_counter()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    entry = _OUTCOMES.setdefault(str(mark.args[0]), {})
    prev = entry.get(item.name, (True, 0.0))
    entry[item.name] = (prev[0] and rep.passed, prev[1] + rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _OUTCOMES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for key in sorted(_OUTCOMES, key=lambda k: (int(k.rstrip("abcde")), k)):
        tests = _OUTCOMES[key]
        failed = [name for name, (ok, _) in tests.items() if not ok]
        seconds = sum(d for _, d in tests.values())
        verdict = "FAIL" if failed else "PASS"
        detail = f"{len(tests) - len(failed)}/{len(tests)} tests, {seconds:.2f}s"
        if failed:
            detail += "; failing: " + ", ".join(failed)
        tr.write_line(f"criterion {key}: {verdict} ({detail})")
    total = time.perf_counter() - _SESSION.get("start", time.perf_counter())
    verdict = "PASS" if total < SUITE_BUDGET else "FAIL"
    tr.write_line(f"criterion 8 suite time: {verdict} ({total:.1f}s for this run, budget {SUITE_BUDGET:.0f}s)")
