import pytest

import qgcipher as qg

# Order-4 ground-truth table used throughout: row a, column b holds a * b.
ORDER4_TABLE = [
    [2, 3, 1, 4],
    [4, 1, 3, 2],
    [3, 4, 2, 1],
    [1, 2, 4, 3],
]


@pytest.fixture
def g4():
    return qg.validate_latin_square(ORDER4_TABLE)


@pytest.fixture
def profile():
    return qg.default_profile()
