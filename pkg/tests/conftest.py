import pytest

from superbicross.instances.classical import make_classical_poincare
from superbicross.instances.kpoincare import (
    build_kappa_poincare_supergroup,
    make_chiral_superspace,
    make_kappa_action_coaction,
    make_super_lorentz,
)


@pytest.fixture(scope="session")
def superspace():
    return make_chiral_superspace()


@pytest.fixture(scope="session")
def lorentz():
    return make_super_lorentz()


@pytest.fixture(scope="session")
def classical():
    return make_classical_poincare()


@pytest.fixture(scope="session")
def kappa_data():
    return make_kappa_action_coaction()


@pytest.fixture(scope="session")
def kappa_bundle():
    return build_kappa_poincare_supergroup()


# -- acceptance summary ----------------------------------------------------------

_CRITERIA: dict[int, tuple[str, bool, float]] = {}
_SETUP = pytest.StashKey[float]()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "setup":
        # session fixtures are built during the setup of their first user
        item.stash[_SETUP] = call.duration
        if rep.failed:
            _CRITERIA[marker.args[0]] = (marker.args[1], False, call.duration)
    elif rep.when == "call":
        number, title = marker.args
        _CRITERIA[number] = (title, rep.passed, item.stash.get(_SETUP, 0.0) + call.duration)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria (seconds include fixture setup)")
    for number in sorted(_CRITERIA):
        title, ok, seconds = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {seconds:7.2f}s  {title}")
