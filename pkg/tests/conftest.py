import pytest

from rhorace.sieve import sieve


@pytest.fixture(scope="session")
def table_1e6():
    """The standard pre-pass table, built once for the whole run."""
    return sieve(10**6)
