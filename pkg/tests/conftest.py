import pytest

from cqlnet import load_category
from cqlnet import fixtures
from cqlnet.model import load_model


@pytest.fixture(scope="session")
def c2():
    return load_category(fixtures.C2_CAT)


@pytest.fixture(scope="session")
def pauli8():
    return load_category(fixtures.PAULI8_CAT)


@pytest.fixture(scope="session")
def c2_mod(c2):
    return load_model(fixtures.C2_MOD, c2)


@pytest.fixture(scope="session")
def c2_bool_mod(c2):
    return load_model(fixtures.C2_BOOL_MOD, c2)


@pytest.fixture(scope="session")
def pauli8_mod(pauli8):
    return load_model(fixtures.PAULI8_MOD, pauli8)
