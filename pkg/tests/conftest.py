import pytest

from multisect.constructions import bisection_from_heegaard, lens_diagram
from multisect.presentations import GroupPresentation


@pytest.fixture
def lens21():
    return lens_diagram(2, 1)


@pytest.fixture
def lens21_bisection(lens21):
    return bisection_from_heegaard(lens21)


@pytest.fixture
def make_bisection():
    def build(p: int, q: int = 1):
        return bisection_from_heegaard(lens_diagram(p, q))

    return build


@pytest.fixture
def z5_squared():
    """< x, y | [x, y], x^5, y^5 >"""
    return GroupPresentation.from_ints(2, [[1, 2, -1, -2], [1] * 5, [2] * 5])
