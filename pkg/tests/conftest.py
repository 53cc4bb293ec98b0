import pytest

from reflmon.examples import arrangement_monoid, boolean_monoid


@pytest.fixture(scope="session")
def mono():
    cache = {}

    def get(kind, family, n):
        key = (kind, family, n)
        if key not in cache:
            cache[key] = boolean_monoid(family, n) if kind == "B" else arrangement_monoid(family, n)
        return cache[key]

    return get
