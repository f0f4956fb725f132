"""
tests/conftest
~~~~~~~~~~~~~~
"""
import os

os.environ.setdefault('BERNSUM_ENV', 'testing')

import pytest
from click.testing import CliRunner

from bernsum import create_cli
from bernsum.core.config import TestingConfig
from bernsum.services.bernoulli_core import MomentEngine
from bernsum.services.oracle import OracleService


@pytest.fixture(autouse=True)
def testing_env(monkeypatch):
    monkeypatch.setenv('BERNSUM_ENV', 'testing')
    for name in ('BERNSUM_BUDGET', 'BERNSUM_EPSILON', 'BERNSUM_SEED', 'BERNSUM_LOG_FILE'):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def config():
    return TestingConfig()


@pytest.fixture
def engine(config):
    return MomentEngine(config=config)


@pytest.fixture
def oracle(config):
    return OracleService(config)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def invoke(runner, config):
    """Run the bernsum group with string arguments."""
    cli = create_cli(config)

    def _invoke(*args):
        return runner.invoke(cli, [str(a) for a in args])
    return _invoke
