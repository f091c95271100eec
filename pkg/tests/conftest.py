import pytest

from ezcipher import fixtures


@pytest.fixture(scope="session")
def corpus():
    """The three deterministic evaluation signals at full (1e5) length."""
    return {name: fixtures.make_fixture(name) for name in fixtures.FIXTURE_NAMES}
