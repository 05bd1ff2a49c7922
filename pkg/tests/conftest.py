import sys
from pathlib import Path

import pytest

from gks import canonical_table, theorem2

ROOT = Path(__file__).resolve().parents[1]
TABLE_PATH = ROOT / "tables" / "gks_12_3.ucode"

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture(scope="session")
def table():
    return canonical_table()


@pytest.fixture(scope="session")
def t2(table):
    return theorem2(table)


@pytest.fixture(scope="session")
def table_path():
    return TABLE_PATH


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
