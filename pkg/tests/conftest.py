import pytest

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): exit criterion of the package")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.failed):
        doc = (item.obj.__doc__ or item.name).strip().splitlines()[0]
        previous, doc = _acceptance.get(label, (True, doc))
        _acceptance[label] = (previous and report.passed, doc)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: int(s.split("-")[1])):
        passed, doc = _acceptance[label]
        terminalreporter.write_line(f"{label} {'PASS' if passed else 'FAIL'}  {doc}")
