import pytest

from heis7.characters import g7_table, sl2_table


@pytest.fixture(scope="session")
def g7():
    return g7_table()


@pytest.fixture(scope="session")
def sl2():
    return sl2_table()
