import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running acceptance checks")
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion checked by this test")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, text = mark.args
    ok = call.excinfo is None
    prev = _CRITERIA.get(number)
    seconds = call.duration + (prev[2] if prev else 0.0)
    _CRITERIA[number] = (text, ok and (prev is None or prev[1]), seconds)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        text, ok, seconds = _CRITERIA[number]
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:>2}: {verdict}  ({seconds:7.1f} s)  {text}")
