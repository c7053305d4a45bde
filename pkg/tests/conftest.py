import pytest

from ncdeform.params import derive_params
from ncdeform.rewrite import ReductionSystem

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    ok = call.excinfo is None
    prev = _criteria.get(number, (title, True))
    _criteria[number] = (title, prev[1] and ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture(scope="session")
def exact_sys():
    return ReductionSystem.torus(derive_params(2, "1/5"), backend="exact")


@pytest.fixture(scope="session")
def float_sys():
    return ReductionSystem.torus(derive_params(2, "1/5"), backend="float")
