from pathlib import Path

import pytest

from _acceptance import LINES
from pwmirror.fixtures import DATA_DIR


@pytest.fixture
def scenario_path():
    def get(rel: str) -> Path:
        return DATA_DIR / rel

    return get


def pytest_terminal_summary(terminalreporter):
    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
