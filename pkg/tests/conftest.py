import numpy as np
import pytest

from minopt import SeparableDataset


@pytest.fixture
def tiny_data():
    # X = I2, y = (1, 2): f(0) = 5, grad(0) = (-2, -4), minimum at theta = y
    return SeparableDataset(np.eye(2), np.array([1.0, 2.0]))


@pytest.fixture
def random_data():
    rng = np.random.default_rng(7)
    X = rng.standard_normal((40, 6))
    y = X @ rng.standard_normal(6) + 0.5 * rng.standard_normal(40)
    return SeparableDataset(X, y)
