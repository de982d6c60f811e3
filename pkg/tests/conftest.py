import pytest

_criteria = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number and summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None and rep.when == "call":
        _criteria.append((m.args[0], m.args[1], rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    grouped = {}
    for n, text, outcome in _criteria:
        grouped.setdefault((n, text), []).append(outcome == "passed")
    for (n, text), oks in sorted(grouped.items()):
        verdict = "PASS" if all(oks) else "FAIL"
        cases = f" [{sum(oks)}/{len(oks)} cases]" if len(oks) > 1 else ""
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}  {text}{cases}")
