import pytest

from torsionlab.sampling import Sampler


@pytest.fixture
def sampler():
    return Sampler(20240)
