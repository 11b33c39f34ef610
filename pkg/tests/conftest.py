import pytest
from hypothesis import HealthCheck, settings

from mrdscatter.gfarith import tower_build

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


@pytest.fixture(scope="session")
def F3():
    return tower_build(3, 1, 5)


@pytest.fixture(scope="session")
def F5():
    return tower_build(5, 1, 5)


@pytest.fixture(scope="session")
def F2_7():
    return tower_build(2, 1, 7)


@pytest.fixture(scope="session")
def F2_4():
    return tower_build(2, 1, 4)


@pytest.fixture(scope="session")
def F4_3():
    return tower_build(2, 2, 3)
