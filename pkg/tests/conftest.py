"""Shared fixtures: seeded generators, Flask test client and click runner."""

import numpy as np
import pytest
from click.testing import CliRunner

from app import create_app

SEED = 0xC0FFEE


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def make_rng():
    def _make(offset=0):
        return np.random.default_rng(SEED + offset)
    return _make


@pytest.fixture
def app():
    app = create_app({'TESTING': True})
    yield app


@pytest.fixture
def client(app):
    return app.test_client()


@pytest.fixture
def runner():
    return CliRunner()
