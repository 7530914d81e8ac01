import pytest

from frobtqft import derive
from frobtqft.builders import group_algebra, s3_character_ring


@pytest.fixture(scope="session")
def s3():
    return derive(s3_character_ring())


@pytest.fixture(scope="session")
def z2():
    return derive(group_algebra("Z2"))


@pytest.fixture(scope="session")
def z3():
    return derive(group_algebra("Z3"))


@pytest.fixture(scope="session")
def z4():
    return derive(group_algebra("Z4"))


# acceptance reporting ---------------------------------------------------------------

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and rep.passed):
        return
    number, title = mark.args
    ok = rep.passed and _criteria.get(number, (True,))[0]
    _criteria[number] = (ok, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
