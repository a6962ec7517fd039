"""Acceptance bookkeeping: one PASS/FAIL line per criterion in the terminal summary."""

from __future__ import annotations

import pytest

_RESULTS: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title, budget): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    number, title, budget = mark.args
    entry = _RESULTS.setdefault(number, {"title": title, "budget": budget, "ok": True,
                                         "duration": 0.0, "ran": False})
    if rep.when == "call":
        entry["ran"] = True
        entry["duration"] += rep.duration
    if rep.failed or rep.skipped:
        entry["ok"] = False


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_RESULTS):
        e = _RESULTS[number]
        status = "PASS" if e["ok"] and e["ran"] else "FAIL"
        tr.write_line(f"{status} criterion {number}: {e['title']} "
                      f"({e['duration']:.1f}s, budget {e['budget']}s)")
