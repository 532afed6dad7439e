from pathlib import Path

import pytest

from ..lib.corpus import BUNDLED_CORPUS


@pytest.fixture
def datadir():
    """
    Simple fixture for getting the test-only case files
    """
    here = Path(__file__).parent / "data"
    return here


@pytest.fixture
def corpus_dir():
    """
    The bundled corpus
    """
    return BUNDLED_CORPUS


def pytest_configure(config):
    config.addinivalue_line("markers", "corpus: mark test running over the whole corpus")
