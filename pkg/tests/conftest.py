import pytest

from reglab import PadicField


@pytest.fixture
def K():
    return PadicField(7, 20)


@pytest.fixture
def K3():
    """log 7 = 3."""
    return PadicField(7, 20, 3)
