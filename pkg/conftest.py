"""
Shared pytest setup: the `slow` marker gates desk-scale Monte Carlo runs.
Enable them with --runslow or OUIMPACT_RUN_SLOW=1.
"""

import os

import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run desk-scale tests")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: desk-scale run (minutes); needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow") or os.getenv("OUIMPACT_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow or OUIMPACT_RUN_SLOW=1")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
