import sys
from pathlib import Path

import pytest

from reprokit import read_qrels, read_run

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture(scope="session")
def mini_qrels():
    return read_qrels(str(DATA / "mini.qrels"))


@pytest.fixture(scope="session")
def mini_orig():
    return read_run(str(DATA / "mini_orig.run"))


@pytest.fixture(scope="session")
def mini_rep():
    return read_run(str(DATA / "mini_rep.run"))


@pytest.fixture(scope="session")
def mini_adv():
    return read_run(str(DATA / "mini_orig_adv.run"))


_criteria = {}
_session_start = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_sessionstart(session):
    import time

    _session_start.append(time.perf_counter())


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            item.user_properties.append(("criterion", mark.args))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or report.outcome != "passed":
        key = props["criterion"]
        _criteria[key] = _criteria.get(key, True) and report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    import time

    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for (number, title), ok in sorted(_criteria.items()):
        tr.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")
    elapsed = time.perf_counter() - _session_start[0]
    verdict = "PASS" if elapsed < 60 else "FAIL"
    tr.write_line(f"criterion 8 (suite runtime): {verdict}  {elapsed:.1f} s < 60 s")
