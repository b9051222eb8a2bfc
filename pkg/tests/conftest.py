from __future__ import annotations

import pytest

from surfsig.classes import conjugacy_classes
from surfsig.groups import build_psl2

_CRITERIA: dict = {}


def _order(n):
    head = str(n).split("-")[0]
    return (int(head) if head.isdigit() else 10**6, str(n))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number and title")


@pytest.fixture(scope="session")
def psl7():
    return build_psl2(7)


@pytest.fixture(scope="session")
def psl11():
    return build_psl2(11)


@pytest.fixture(scope="session")
def T7(psl7):
    return conjugacy_classes(psl7)


@pytest.fixture(scope="session")
def T11(psl11):
    return conjugacy_classes(psl11)


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, title = mark.args
    entry = _CRITERIA.setdefault(n, {"title": title, "ok": True})
    if call.excinfo is not None:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA, key=_order):
        e = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if e['ok'] else 'FAIL'}  {e['title']}")
