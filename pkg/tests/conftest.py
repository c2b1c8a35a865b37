import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, text): acceptance criterion covered by a test")
    config._criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or (rep.when != "call" and not rep.failed and not rep.skipped):
        return
    num, text = mark.args
    entry = item.config._criteria.setdefault(num, {"text": text, "passed": 0, "failed": 0, "skipped": 0, "details": []})
    if rep.skipped:
        entry["skipped"] += 1
    elif rep.failed:
        entry["failed"] += 1
    else:
        entry["passed"] += 1
    entry["details"] += [str(v) for k, v in item.user_properties if k == "detail"]


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    crit = getattr(config, "_criteria", {})
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(crit):
        e = crit[num]
        status = "FAIL" if e["failed"] or not e["passed"] else "PASS"
        extra = f" ({e['skipped']} slow case(s) skipped)" if e["skipped"] else ""
        terminalreporter.write_line(f"[{status}] criterion {num}: {e['text']}{extra}")
        for d in e["details"]:
            terminalreporter.write_line(f"    {d}")
