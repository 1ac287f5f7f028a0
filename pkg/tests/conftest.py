import re

import pytest

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    m = re.match(r"test_criterion_(\d+)", item.name)
    if not m:
        return
    num = int(m.group(1))
    title = (item.function.__doc__ or item.name).strip().splitlines()[0]
    prev = _CRITERIA.get(num, (title, "PASS"))[1]
    if rep.when == "call" or rep.failed:
        status = "FAIL" if rep.failed or prev == "FAIL" else ("SKIP" if rep.skipped else "PASS")
        _CRITERIA[num] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        title, status = _CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {status}  {title}")
