import pytest

from stratisolve import FIXTURE_NAMES, load_fixture


@pytest.fixture(scope="session")
def fixtures():
    """All bundled example graphs by name."""
    return {name: load_fixture(name) for name in FIXTURE_NAMES}
