import pytest

# one line per acceptance criterion, filled in by tests/test_acceptance.py
ACCEPTANCE: dict[int, str] = {}


class Criterion:
    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.failed: list[str] = []
        self.notes: list[str] = []

    def check(self, label: str, ok: bool, detail: str = "") -> None:
        if not ok:
            self.failed.append(f"{label}: {detail}" if detail else label)

    def note(self, text: str) -> None:
        self.notes.append(text)

    def finish(self) -> None:
        status = "PASS" if not self.failed else "FAIL"
        line = f"criterion {self.number} ({self.title}): {status}"
        if self.failed:
            line += " [" + "; ".join(self.failed) + "]"
        for n in self.notes:
            line += f"\n    note: {n}"
        ACCEPTANCE[self.number] = line
        print(line)
        assert not self.failed, line


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[n])
