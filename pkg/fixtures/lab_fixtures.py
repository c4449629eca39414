# fixtures/lab_fixtures.py

import os

import pytest

from utils.config_loader import load_config
from utils.data_generator import DataGenerator


@pytest.fixture(scope="session")
def config(request):
    """Configuration for the profile chosen with --profile."""
    profile = request.config.getoption("--profile")
    os.environ['LAB_PROFILE'] = profile
    return load_config(profile)


@pytest.fixture
def context():
    """Values handed from one step of a scenario to the next."""
    return {}


@pytest.fixture
def data_generator(config):
    return DataGenerator(seed=config['data_generation']['seed'])


@pytest.fixture
def report_dir(tmp_path):
    path = tmp_path / "sweeps"
    path.mkdir()
    return path
