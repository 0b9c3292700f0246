import json
from pathlib import Path

import pytest

from algmmp.fileio import variety_from_json, morphism_from_json

FIXTURES = Path(__file__).parent / "fixtures"


def fixture_path(name):
    return str(FIXTURES / f"{name}.json")


def load_variety(name, certify=False):
    return variety_from_json(json.loads((FIXTURES / f"{name}.json").read_text()), certify=certify)


def load_morphism(name):
    return morphism_from_json(json.loads((FIXTURES / f"{name}.json").read_text()), certify=False)


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# acceptance report: one line per criterion, printed after the run
_CRITERIA = {}


@pytest.fixture
def report():
    def record(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})"
        _CRITERIA[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        terminalreporter.write_line(_CRITERIA[n])
