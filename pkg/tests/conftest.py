import pytest
from hypothesis import HealthCheck, settings

from gmtlogic import HistorySpace, QuantumMeasure

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

INTERFERENCE_AMPS = [1, -1, 1]


@pytest.fixture
def space3():
    return HistorySpace.of_size(3)


@pytest.fixture
def interference():
    return QuantumMeasure.from_amplitudes(HistorySpace.of_size(3), INTERFERENCE_AMPS, normalize=True)
