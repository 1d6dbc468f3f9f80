import sys
from collections import defaultdict
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_results = defaultdict(list)  # criterion number -> [(outcome, nodeid)]
_titles = {}
_notes = defaultdict(list)


@pytest.fixture
def criterion_note(request):
    """Attach a line of detail to the criterion summary."""
    marker = request.node.get_closest_marker("criterion")
    return lambda text: _notes[marker.args[0]].append(text)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        rep.criterion = (marker.args[0], marker.args[1])


def pytest_runtest_logreport(report):
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    num, title = crit
    _titles[num] = title
    if hasattr(report, "wasxfail"):
        outcome = "xfail" if report.skipped else "xpass"
    elif report.when == "call" or report.failed:
        outcome = report.outcome
    else:
        return
    _results[num].append((outcome, report.nodeid))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_results):
        outcomes = {o for o, _ in _results[num]}
        if outcomes <= {"passed"}:
            verdict = "PASS"
        elif "xfail" in outcomes and outcomes <= {"passed", "xfail"}:
            verdict = "FAIL (expected, analysed in the decision ledger)"
        else:
            verdict = "FAIL"
        tr.write_line(f"criterion {num:>2}: {verdict:<5} {_titles[num]}")
        for note in _notes[num]:
            tr.write_line(f"              {note}")
