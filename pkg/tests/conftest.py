import pytest
from hypothesis import HealthCheck, settings

from tenv.backend import FinSetOp, FinVectFq
from tenv.degree import natural_degree

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def setop():
    return FinSetOp()


@pytest.fixture(scope="session")
def vect2():
    return FinVectFq(2)


@pytest.fixture(scope="session")
def vect3():
    return FinVectFq(3)


@pytest.fixture(scope="session")
def dset(setop):
    return natural_degree(setop)


@pytest.fixture(scope="session")
def dvect(vect2):
    return natural_degree(vect2)


# ----- one PASS/FAIL line per acceptance criterion -----

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when not in ("setup", "call"):
        return
    number, title = mark.args
    failed = report.failed or (report.when == "call" and report.skipped)
    previous = _CRITERIA.get(number, (True, title))[0]
    if report.when == "call" or failed:
        _CRITERIA[number] = (previous and not failed, title)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, title = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {title}")
