import numpy as np
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from app.main import app


@pytest.fixture
def client():
    return TestClient(app)


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)
