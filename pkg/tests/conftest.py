import sys
from pathlib import Path

import pytest
from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"

_acceptance: dict[str, tuple[str, str]] = {}


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    criterion = getattr(item.function, "criterion", None)
    if criterion is None or report.when != "call":
        return
    detail = ""
    if report.failed and call.excinfo is not None:
        detail = str(call.excinfo.value).splitlines()[0]
    _acceptance[criterion] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for criterion in sorted(_acceptance, key=lambda c: int(c.split()[0])):
        status, detail = _acceptance[criterion]
        terminalreporter.write_line(f"{status}  criterion {criterion}" + (f"  [{detail}]" if detail else ""))
