import pytest

CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line for an acceptance criterion.

    Usage: ``criterion("C1", "description")``; the outcome is taken from the
    test's own result, so an assertion failure marks the criterion red.
    """
    labels = []

    def register(label: str, description: str):
        labels.append((label, description))

    yield register
    failed = request.node.stash.get(_FAILED, False)
    for label, description in labels:
        CRITERIA[label] = (not failed, description)
        print(f"\n{label} {'PASS' if not failed else 'FAIL'}: {description}")


_FAILED = pytest.StashKey[bool]()


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    if call.when == "call" and report.failed:
        item.stash[_FAILED] = True
    return report


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(CRITERIA, key=lambda s: int(s[1:])):
        ok, description = CRITERIA[label]
        terminalreporter.write_line(f"{label} {'PASS' if ok else 'FAIL'}: {description}")
