import numpy as np
import pytest


@pytest.fixture(autouse=True)
def _deterministic_numpy_errors():
    # fail loudly on unexpected float trouble inside tests
    with np.errstate(over="warn", invalid="warn"):
        yield
