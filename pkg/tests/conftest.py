import os
from pathlib import Path

import pytest

# batch helpers fork worker processes unless told otherwise
os.environ.setdefault("NLF_THREADS", "0")

CONFIG_DIR = Path(__file__).resolve().parents[1] / "configs"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def config_dir() -> Path:
    return CONFIG_DIR


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
