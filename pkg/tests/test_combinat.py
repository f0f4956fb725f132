"""
tests/test_combinat
~~~~~~~~~~~~~~~~~~~
"""
from fractions import Fraction
from math import factorial

import pytest

from bernsum.core.exceptions import InvalidParameterError
from bernsum.models.scalar import Scalar
from bernsum.services.combinat import (
    bell,
    binom,
    elementary_symmetric,
    falling,
    harmonic,
    stirling1_signed,
    stirling2,
    surjections,
    weighted_falling_sum,
)


@pytest.mark.parametrize(
    "k, m, expected",
    [(0, 0, 1), (3, 0, 0), (2, 3, 0), (3, 2, 6), (4, 3, 36), (5, 5, 120)],
)
def test_surjections(k, m, expected):
    """
    Ensures surjection counts match known values and the zero conventions.
    """
    assert surjections(k, m) == expected


def test_stirling_and_bell_values():
    assert stirling2(4, 2) == 7
    assert stirling2(6, 6) == 1
    assert stirling2(3, 1) == 1
    assert stirling1_signed(3, 2) == -3
    assert stirling1_signed(3, 1) == 2
    assert stirling1_signed(5, 5) == 1
    assert [bell(k) for k in range(6)] == [1, 1, 2, 5, 15, 52]


def test_surjections_are_factorial_multiples():
    """
    Ensures S(k,m) = m! S2(k,m) and that the closed forms for two and three blocks hold.
    """
    for k in range(13):
        for m in range(13):
            assert surjections(k, m) == factorial(m) * stirling2(k, m)
        if k >= 1:
            assert stirling2(k, 2) * 2 == 2 ** k - 2
            assert surjections(k, 3) == 3 ** k - 3 * 2 ** k + 3


def test_bell_is_row_sum():
    for k in range(1, 13):
        assert bell(k) == sum(stirling2(k, m) for m in range(k + 1))


def test_powers_expand_into_falling_factorials():
    """
    Ensures x^k = sum_m S2(k,m) [x]_m and [x]_k = sum_m s(k,m) x^m over small integers.
    """
    for x in range(-5, 6):
        for k in range(1, 11):
            assert x ** k == sum(stirling2(k, m) * falling(x, m) for m in range(k + 1))
            assert falling(x, k) == sum(stirling1_signed(k, m) * x ** m for m in range(k + 1))


def test_binom_and_falling():
    assert binom(5, 2) == 10
    assert binom(4, 0) == 1
    assert binom(-1, 2) == 0
    assert binom(3, 5) == 0
    assert falling(5, 2) == 20
    assert falling(3, 4) == 0
    assert falling(Fraction(7, 2), 1) == Fraction(7, 2)
    assert falling(Scalar(4), 2) == Scalar(12)


def test_harmonic():
    assert harmonic(1) == 1
    assert harmonic(2) == Fraction(3, 2)
    assert harmonic(5) == Fraction(137, 60)
    with pytest.raises(InvalidParameterError):
        harmonic(0)


def test_weighted_falling_sum():
    """
    Ensures the closed form agrees with the defining sum.
    """
    assert weighted_falling_sum(1, 2) == 5
    assert weighted_falling_sum(2, 3) == 22
    assert weighted_falling_sum(4, 0) == 0
    for m in range(31):
        for r in range(31):
            assert weighted_falling_sum(m, r) == sum(M * falling(M, m) for M in range(r + 1))


def test_elementary_symmetric():
    sums = elementary_symmetric([Fraction(1, 2), Fraction(1, 3)], 2)
    assert sums == [Scalar(1), Scalar(Fraction(5, 6)), Scalar(Fraction(1, 6))]
    assert elementary_symmetric([], 0) == [Scalar(1)]


@pytest.mark.parametrize("fn", [surjections, stirling2, stirling1_signed])
def test_negative_arguments_rejected(fn):
    with pytest.raises(InvalidParameterError):
        fn(-1, 2)
    with pytest.raises(InvalidParameterError):
        bell(-1)
