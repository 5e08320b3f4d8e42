import pytest

from agcodes.gf import GF


@pytest.fixture
def gf4():
    return GF(2, 2, "a^2+a+1")


@pytest.fixture
def gf9():
    return GF(3, 2, "a^2+1")
