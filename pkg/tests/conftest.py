import pytest

from tautile import _accel


@pytest.fixture
def numba_off():
    prev = _accel.set_numba(False)
    yield
    _accel.set_numba(prev)
