from collections import OrderedDict

import pytest

# criterion id -> list of (test id, outcome, short reason)
_RESULTS: "OrderedDict[str, list]" = OrderedDict()
_TITLES: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(cid, title): acceptance criterion this test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            cid, title = mark.args
            _RESULTS.setdefault(cid, [])
            _TITLES[cid] = title


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if not mark or call.when not in ("setup", "call"):
        return
    cid = mark.args[0]
    if call.excinfo is None:
        if call.when == "call":
            _RESULTS[cid].append((item.name, "PASS", ""))
        return
    if call.excinfo.errisinstance(pytest.skip.Exception):
        _RESULTS[cid].append((item.name, "SKIP", str(call.excinfo.value.msg)))
    else:
        reason = call.excinfo.exconly().splitlines()[0][:120]
        _RESULTS[cid].append((item.name, "FAIL", reason))


def pytest_terminal_summary(terminalreporter):
    if not any(_RESULTS.values()):
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid, results in _RESULTS.items():
        if not results:
            continue
        outcomes = {o for _, o, _ in results}
        status = "FAIL" if "FAIL" in outcomes else "PASS"
        skipped = sum(o == "SKIP" for _, o, _ in results)
        passed = sum(o == "PASS" for _, o, _ in results)
        note = f" ({passed} passed, {skipped} skipped)" if skipped else f" ({passed} passed)"
        tr.write_line(f"[{status}] criterion {cid}: {_TITLES[cid]}{note}")
        for name, outcome, reason in results:
            if outcome != "PASS":
                tr.write_line(f"       {outcome} {name}: {reason}")
