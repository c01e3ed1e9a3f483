import numpy as np
import pytest

from tvbounds.components.optimizers import OptimizerConfig
from tvbounds.distributions import ProbVector


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def small_config():
    """
    Уменьшенный бюджет поиска, чтобы быстрые тесты оставались быстрыми.
    """
    return OptimizerConfig(grid_size=4, refine_starts=2, max_iterations=300)


@pytest.fixture
def two_probs():
    return ProbVector.from_iterable([0.1, 0.2])


def random_instance(rng: np.random.Generator, max_n: int) -> ProbVector:
    n = int(rng.integers(1, max_n + 1))
    return ProbVector.from_iterable(rng.uniform(0.0, 1.0, size=n).tolist())
