import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "dirsets", max_examples=50, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("dirsets")

from dirsets.field import make_field
from dirsets.geometry import AffinePointSet


@pytest.fixture(scope="session")
def gf2():
    return make_field(2, 1)


@pytest.fixture(scope="session")
def gf3():
    return make_field(3, 1)


@pytest.fixture(scope="session")
def gf4():
    return make_field(2, 2)


@pytest.fixture(scope="session")
def gf5():
    return make_field(5, 1)


@pytest.fixture(scope="session")
def gf8():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def gf9():
    return make_field(3, 2)


@pytest.fixture(scope="session")
def unit_square(gf4):
    """Four points of the unit square in AG(2,4): determines {0, 1, inf}."""
    return AffinePointSet.of(gf4, [(0, 0), (1, 0), (0, 1), (1, 1)])


@pytest.fixture(scope="session")
def collinear3_gf5(gf5):
    return AffinePointSet.of(gf5, [(0, 0), (1, 1), (2, 2)])


def random_point_set(field, rng, n):
    q = field.q
    codes = rng.sample(range(q * q), n)
    return AffinePointSet.of(field, [divmod(c, q) for c in codes])
