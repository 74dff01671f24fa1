import numpy as np
import pytest

from cekit.tensor import PureState


@pytest.fixture
def bell() -> PureState:
    return PureState(np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2.0), (2, 2))


@pytest.fixture
def zero_one() -> PureState:
    return PureState(np.array([0.0, 1.0, 0.0, 0.0]), (2, 2))
