import numpy as np
import pytest

from qgame import PayoffMatrix


@pytest.fixture
def pd():
    """The standard dilemma table (3, 0, 5, 1) used throughout."""
    return PayoffMatrix(3.0, 0.0, 5.0, 1.0)


@pytest.fixture
def pd_low():
    """Variant with a shallow mutual-defection payoff (3, 0, 5, 0.2)."""
    return PayoffMatrix(3.0, 0.0, 5.0, 0.2)


@pytest.fixture
def rng():
    return np.random.default_rng(20260817)
