import numpy as np
import pytest

from qcluster import seeds


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def a2():
    return seeds.new_seed([1, 2], [[0, 1], [-1, 0]], [1, 1])


@pytest.fixture
def d12():
    """Rank-2 seed with multipliers [1, 2]; exercises q_k = q**(1/2)."""
    return seeds.new_seed([1, 2], [[0, 2], [-1, 0]], [1, 2])


@pytest.fixture
def rank1():
    return seeds.new_seed([1], [[0]], [1])


@pytest.fixture
def rank3():
    return seeds.new_seed([1, 2, 3], [[0, 1, 0], [-1, 0, 1], [0, -1, 0]], [1, 1, 1])
