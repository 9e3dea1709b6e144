import os
import sys

import pytest

# Add src to Python path
sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(__file__)), 'src'))

from zycle_search import SearchBudget  # noqa: E402


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: exhaustive runs that take more than a few seconds")


@pytest.fixture
def budget():
    """A generous deterministic budget for desk-scale searches."""
    return SearchBudget(node_limit=5_000_000, time_limit=120.0, deterministic=True)


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    for name in ('ZYCLONE_JOBS', 'ZYCLONE_LOG_LEVEL', 'ZYCLONE_BUDGET_NODES',
                 'ZYCLONE_BUDGET_SECONDS', 'ZYCLONE_EXACT_MAX_N'):
        monkeypatch.delenv(name, raising=False)
