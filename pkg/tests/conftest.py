import pytest

_RESULTS: dict[str, tuple[bool, str]] = {}


class AcceptanceRecorder:
    def check(self, label: str, passed: bool, detail: str = "") -> None:
        line = f"{'PASS' if passed else 'FAIL'} {label}" + (f": {detail}" if detail else "")
        _RESULTS[label] = (passed, detail)
        print(line)
        assert passed, line


@pytest.fixture
def acceptance():
    return AcceptanceRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS):
        passed, detail = _RESULTS[label]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'} {label}" + (f": {detail}" if detail else ""))
