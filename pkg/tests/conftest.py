import pytest

from decompgen.corpus import REGISTRY, STRETCH


@pytest.fixture(scope="session")
def corpus():
    """Built-once corpus algebras keyed by registry name."""
    return {key: entry.algebra() for key, entry in REGISTRY.items()}


@pytest.fixture(scope="session")
def b3():
    return STRETCH["B3_Q"].algebra()
