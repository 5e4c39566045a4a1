import pytest

from oscfree import OscillatorParams


@pytest.fixture
def params() -> OscillatorParams:
    return OscillatorParams(mass=1.0, omega=1.0)
