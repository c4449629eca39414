# conftest.py
import os
import sys

import pytest

# Add project root to sys.path to enable imports
project_root = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, project_root)

# Import fixtures from central location
from fixtures.lab_fixtures import config, context, data_generator, report_dir


def pytest_addoption(parser):
    parser.addoption("--profile", default="desk",
                     choices=["desk", "full"],
                     help="Configuration profile the counters run under")


def pytest_configure(config):
    os.environ['LAB_PROFILE'] = config.getoption("--profile")


# Tests marked slow need the larger budgets of the full profile
def pytest_collection_modifyitems(config, items):
    if config.getoption("--profile") == "full":
        return
    skip_marker = pytest.mark.skip(reason="slow test; run with --profile full")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_marker)
