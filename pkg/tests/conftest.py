import numpy as np
import pytest

from regimetrics import MappedSeries


@pytest.fixture
def make_series():
    """Factory for seeded random mapped series with unique channel labels."""

    def _make(seed: int, t_max: int, n: int, scale: float = 10.0, offset: float = 0.0):
        rng = np.random.RandomState(seed)
        values = offset + scale * rng.rand(t_max, n)
        labels = tuple(f"ch{i + 1}" for i in range(n))
        return MappedSeries(values=values, channel_labels=labels)

    return _make
