from fractions import Fraction

import pytest

from shiftlap import Alphabet


@pytest.fixture
def binary():
    return Alphabet(2)


@pytest.fixture
def ternary():
    return Alphabet(3)


def frac(text) -> Fraction:
    return Fraction(text)
