import pytest
from hypothesis import HealthCheck, settings

from redeiperm import make_field

settings.register_profile(
    "exact", deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("exact")


@pytest.fixture(scope="session")
def q3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def q5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def q7():
    return make_field(7, 1)


@pytest.fixture(scope="session")
def q9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def q11():
    return make_field(11, 1)


@pytest.fixture(scope="session")
def q13():
    return make_field(13, 1)


@pytest.fixture(scope="session")
def q25():
    return make_field(5, 2)
