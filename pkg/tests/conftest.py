import pytest

from surfloops.surface import parse_surface

WORKED_SURFACE = "genus:2,boundary:1"
WORKED_WORD = "a3.a1.A2.a3.a1.A2.a3.a1.A2.A2.A2"


@pytest.fixture
def torus():
    return parse_surface("genus:1,boundary:1")


@pytest.fixture
def pants():
    return parse_surface("spheres:3")


@pytest.fixture
def genus2():
    return parse_surface(WORKED_SURFACE)
