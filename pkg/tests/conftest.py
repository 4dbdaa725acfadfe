import pytest

from selfinduced import Endomorphism

PSI = {"a": "bdacda", "b": "bdbda", "c": "ccda", "d": "cda"}
PHI = {"a": "abdacd", "b": "abdbd", "c": "accd", "d": "acd"}
SPECIAL = {"a": "abcad", "b": "bd", "c": "bc", "d": "bca"}
FIB = {"a": "ab", "b": "a"}


@pytest.fixture(scope="session")
def psi():
    return Endomorphism.from_strings(PSI)


@pytest.fixture(scope="session")
def phi():
    return Endomorphism.from_strings(PHI)


@pytest.fixture(scope="session")
def special():
    return Endomorphism.from_strings(SPECIAL)


@pytest.fixture(scope="session")
def fib():
    return Endomorphism.from_strings(FIB)


@pytest.fixture(scope="session")
def psi_detection(psi):
    from selfinduced import detect_singularities
    return detect_singularities(psi)


@pytest.fixture(scope="session")
def psi_report(psi):
    from selfinduced import decide
    return decide(psi)


# one pass/fail line per acceptance criterion ----------------------------

_criteria: dict[int, bool] = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.outcome == "failed":
        number = int(name.split("_")[2])
        _criteria[number] = _criteria.get(number, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if _criteria[number] else 'FAIL'}")
