import time
from pathlib import Path

import pytest

SESSION_T0 = time.perf_counter()

ROOT = Path(__file__).resolve().parents[1]


def session_elapsed() -> float:
    return time.perf_counter() - SESSION_T0


def pytest_collection_modifyitems(items):
    # The whole-suite runtime check must observe everything else, so it runs
    # last regardless of collection order.
    items.sort(key=lambda item: item.name == "test_c10_full_suite_runtime")


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return ROOT / "fixtures"


@pytest.fixture(scope="session")
def golden_dir() -> Path:
    return Path(__file__).resolve().parent / "golden"
