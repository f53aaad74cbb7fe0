"""Shared fixtures: families are expensive, so each is built once per session."""

from fractions import Fraction

import pytest

from ospcheck import catalog, evalrep


@pytest.fixture
def at_t2():
    """Pole context for objects built at t = 2."""
    with evalrep.pole_context(Fraction(2)):
        yield Fraction(2)


@pytest.fixture(scope="session")
def config2():
    return catalog.CatalogConfig(t=Fraction(2), serre_regions="monomial")


@pytest.fixture(scope="session")
def family2(config2):
    return evalrep.build_family(t=config2.t, convention="aux-first")


@pytest.fixture(scope="session")
def config_symbolic():
    return catalog.CatalogConfig(t=None, serre_regions="monomial")


@pytest.fixture(scope="session")
def convention_symbolic():
    """The slice-convention validator run on the symbolic R-matrix."""
    return evalrep.validate_convention(t=None)


@pytest.fixture(scope="session")
def family_symbolic(config_symbolic, convention_symbolic):
    return evalrep.build_family(t=None, convention=convention_symbolic.selected)


@pytest.fixture(scope="session")
def reports2(family2, config2):
    """The whole catalog at t = 2, keyed by relation id."""
    return {r.key: r for r in catalog.run_suite("all", family2, config2)}


@pytest.fixture(scope="session")
def reports_symbolic(family_symbolic, config_symbolic):
    """The whole catalog with t kept symbolic; the authoritative run."""
    return {r.key: r for r in catalog.run_suite("all", family_symbolic, config_symbolic)}


# acceptance summary ----------------------------------------------------------------
# Tests marked ``criterion(n, title)`` get one PASS/FAIL line each in the summary.

_CRITERIA = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and rep.passed:
        return
    number, title = mark.args
    failed = rep.failed or (rep.when == "call" and rep.skipped)
    if rep.when == "call" or failed:
        _CRITERIA[number] = (title, "FAIL" if failed else "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, verdict = _CRITERIA[number]
        terminalreporter.write_line("criterion %2d  %s  %s" % (number, verdict, title))
