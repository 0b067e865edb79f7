from __future__ import annotations

import pytest

_LOG = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): numbered acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    log = item.config.stash.setdefault(_LOG, {})
    n, title = marker.args
    detail = ""
    if rep.failed and call.excinfo is not None:
        detail = str(call.excinfo.value).splitlines()[0][:110]
    log[n] = (title, "PASS" if rep.passed else "FAIL", round(call.duration, 2), detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_LOG, {})
    if not log:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(log):
        title, status, secs, detail = log[n]
        line = f"criterion {n:>2} {status}  {secs:>7.2f}s  {title}"
        if detail:
            line += f"  -- {detail}"
        terminalreporter.write_line(line)
