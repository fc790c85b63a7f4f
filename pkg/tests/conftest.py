"""
Pytest configuration and fixtures for latentstart tests.
"""
import sys
from pathlib import Path

# Add the project root to the Python path
sys.path.insert(0, str(Path(__file__).parent.parent))

import numpy as np
import pytest

from latentstart.core.models import (
    ConditionLabel,
    GaussianComponent,
    GaussianMixture,
    isotropic_model,
    make_conditional_mixture,
)
from latentstart.core.schedule import build_schedule
from latentstart.data import checkerboard
from latentstart.types import ConditionEmbedding, style_dim_for
from latentstart.utils import SeededRng

LABEL_SCALE = 0.5


@pytest.fixture
def schedule():
    """Fixture providing the default 1000/50 scaled-linear schedule."""
    return build_schedule()


@pytest.fixture
def rng():
    """Fixture returning a factory of labelled test streams."""
    def make(label="test", seed=0):
        return SeededRng(seed, f"tests/{label}")
    return make


@pytest.fixture
def isotropic(schedule):
    """Single Gaussian on a 4x4x1 grid with entries +-2 and unit scale."""
    mean = 2.0 * np.sign(SeededRng(3, "tests/isotropic").normal((4, 4, 1)))
    return isotropic_model(mean, 1.0, schedule)


@pytest.fixture
def make_label():
    """Factory of single-Gaussian labels with hand-made embeddings, for grids below 8x8."""
    def make(name, mean, scale=1.0, style_value=0.0):
        mean = np.asarray(mean, dtype=np.float64)
        style = np.zeros(style_dim_for(mean.shape[2]))
        style[0] = style_value
        embedding = ConditionEmbedding(style, np.zeros(64), label=name)
        mixture = GaussianMixture([GaussianComponent(mean, scale)])
        return ConditionLabel(name, mixture, embedding)
    return make


@pytest.fixture
def two_label_model(schedule):
    """
    Two labels on 8x8x1 grids at scale 0.5: ``a`` at +checkerboard, ``b`` a flat -1 plane.

    The labels differ in both embedding slots, so a negative condition built
    from an ``a`` content image and a ``b`` style image selects ``b``.
    """
    return make_conditional_mixture(
        {"a": [GaussianComponent(checkerboard((8, 8, 1)), LABEL_SCALE)],
         "b": [GaussianComponent(np.full((8, 8, 1), -1.0), LABEL_SCALE)]},
        schedule,
    )


@pytest.fixture
def single_label_model(schedule):
    """One label on 8x8x1 with entries +-2 and unit scale."""
    board = checkerboard((8, 8, 1), amplitude=2.0)
    return make_conditional_mixture({"only": [GaussianComponent(board, 1.0)]}, schedule)


@pytest.fixture
def configs_dir():
    """Fixture providing the path of the sample config documents."""
    return Path(__file__).parent.parent / "configs"


# Add command line options
def pytest_addoption(parser):
    """Add custom command line options to pytest."""
    parser.addoption(
        "--run-slow", action="store_true", default=False, help="run slow tests"
    )


def pytest_configure(config):
    """Pytest configuration hook."""
    config.addinivalue_line("markers", "slow: mark test as slow to run")


def pytest_collection_modifyitems(config, items):
    """Modify test collection based on command line options."""
    if not config.getoption("--run-slow"):
        skip_slow = pytest.mark.skip(reason="need --run-slow option to run")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)
