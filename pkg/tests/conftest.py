import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES = {}


def pytest_addoption(parser):
    parser.addoption("--run-d5", action="store_true", default=False,
                     help="run the w0(D5) accessibility sweep (about six minutes)")


def pytest_configure(config):
    config.addinivalue_line("markers", "d5: the long w0(D5) sweep, enabled by --run-d5")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-d5"):
        return
    skip = pytest.mark.skip(reason="needs --run-d5")
    for item in items:
        if "d5" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def acceptance_line():
    """Record the one-line verdict of an acceptance criterion."""
    def record(number, ok, text):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {text}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
