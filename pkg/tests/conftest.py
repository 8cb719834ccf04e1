import pytest

from quadring.ring import RingContext


@pytest.fixture(scope="session")
def ctx10() -> RingContext:
    return RingContext(10)
