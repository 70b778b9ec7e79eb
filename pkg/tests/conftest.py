import pytest

from darbouxkit import (
    DEFAULT_POLICY,
    curve_fixture,
    fixture_rectifying,
    pair_catalog,
    run_all,
)


@pytest.fixture(scope="session")
def policy():
    return DEFAULT_POLICY


@pytest.fixture(scope="session")
def rect():
    """Default rectifying fixture: secant-dilated circle on its cone."""
    return fixture_rectifying()


@pytest.fixture(scope="session")
def helix():
    """Unit-speed helix, radius 3 pitch factor 4, on its cylinder."""
    return curve_fixture("helix-cylinder", (3.0, 4.0))


@pytest.fixture(scope="session")
def pairs():
    return pair_catalog()


@pytest.fixture(scope="session")
def reports():
    """One full checker run shared by the theorem and acceptance tests."""
    return run_all()
