"""Shared fixtures: the worked A5 examples and small exhaustive groups."""

import pytest

from schublocal import group


def eps(i: int, j: int, rank: int = 5) -> tuple[int, ...]:
    """The type A root e_i - e_j (i < j) in simple-root coordinates."""
    coords = [0] * rank
    for k in range(i, j):
        coords[k - 1] = 1
    return tuple(coords)


@pytest.fixture(scope="session")
def a5():
    return group("A5")


@pytest.fixture(scope="session")
def a3():
    return group("A3")


@pytest.fixture(scope="session")
def a2():
    return group("A2")


@pytest.fixture(scope="session")
def fix71(a5):
    """Example data: w and the smooth, non-cominuscule point y."""
    return a5.from_one_line((3, 4, 1, 6, 2, 5)), a5.from_one_line((5, 6, 2, 4, 1, 3))


@pytest.fixture(scope="session")
def fix72(a5):
    """Example data: same w, the singular cominuscule point x."""
    return a5.from_one_line((3, 4, 1, 6, 2, 5)), a5.from_one_line((5, 6, 3, 4, 1, 2))


@pytest.fixture(scope="session")
def fix73(a5):
    """Example data: the covexillary w and the same x."""
    return a5.from_one_line((4, 3, 1, 6, 2, 5)), a5.from_one_line((5, 6, 3, 4, 1, 2))


# the two explicit reduced words for x = (5,6,3,4,1,2) used in the examples
WORD_72 = (2, 1, 4, 3, 5, 4, 2, 1, 3, 2, 5, 4)
WORD_73 = (4, 3, 2, 1, 5, 4, 3, 2, 4, 3, 5, 4)
