import sys
from pathlib import Path

# make the sibling oracle helpers importable regardless of rootdir layout
sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_RESULTS = []


def record_acceptance(criterion: int, passed: bool, detail: str) -> None:
    _ACCEPTANCE_RESULTS.append((criterion, passed, detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, detail in sorted(_ACCEPTANCE_RESULTS):
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {status} - {detail}")
