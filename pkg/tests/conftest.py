"""
Shared fixtures and the ``slow`` marker

Slow tests (Einstein-Hilbert and Einstein-Yang-Mills in full) only run with
``--runslow``.
"""
from pathlib import Path

import pytest

import jetvar
from jetvar.config_manager import config as jetvar_config
from jetvar.lib.field_model import build_model

FIXTURES = Path(jetvar.__file__).parent / "models" / "fixtures"


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="Also run slow tests (metric models in full dimension)")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: identities of metric models that take minutes to verify")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(autouse=True)
def reset_config():
    yield
    jetvar_config.reset()


@pytest.fixture
def fixture_path():
    """
    Path of a shipped model file, by name
    """
    def path(name):
        return FIXTURES / f"{name}.model"
    return path


@pytest.fixture
def scalar():
    return build_model("scalar")


@pytest.fixture
def maxwell2():
    return build_model("maxwell", {"dimension": 2})
