import pytest

from whichway import params


@pytest.fixture
def bach():
    return params.bach_config()


@pytest.fixture
def constants():
    return params.CODATA_2018
