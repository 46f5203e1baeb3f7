import contextlib

import pytest

_CRITERIA: list[tuple[int, str, bool, str]] = []


class _Recorder:
    @contextlib.contextmanager
    def criterion(self, number: int, title: str):
        detail = {"text": ""}
        ok = False
        try:
            yield detail
            ok = True
        finally:
            _CRITERIA.append((number, title, ok, detail["text"]))
            print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} {detail['text']}")


@pytest.fixture
def acceptance():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, text in sorted(_CRITERIA):
        terminalreporter.write_line(
            f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}" + (f" ({text})" if text else ""))
