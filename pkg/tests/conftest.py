import pytest

from forcinglab import fixtures
from forcinglab.renderer import Renderer


@pytest.fixture
def tree3():
    return fixtures.tree3()


@pytest.fixture
def chain2():
    return fixtures.chain2()


@pytest.fixture
def anti2():
    return fixtures.anti2()


@pytest.fixture
def tree7():
    return fixtures.tree7()


@pytest.fixture
def algebra3():
    return fixtures.tree3_algebra()


@pytest.fixture
def vt():
    return fixtures.vt()


@pytest.fixture
def ns2():
    return fixtures.ns2()


@pytest.fixture
def renderer():
    return Renderer()


def pset(*xs):
    return frozenset(xs)
