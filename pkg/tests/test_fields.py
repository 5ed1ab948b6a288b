import pytest
from fractions import Fraction

from qplanes.fields import (DEFAULT_PRIME, PrimeField, RationalField,
                            field_from_spec, is_prime)


def test_default_prime_is_prime():
    assert is_prime(DEFAULT_PRIME)


@pytest.mark.parametrize("n,expect", [
    (2, True), (3, True), (4, False), (11, True), (32003, True),
    (32001, False), (1, False), (0, False),
])
def test_is_prime(n, expect):
    assert is_prime(n) is expect


def test_prime_field_rejects_bad_moduli():
    with pytest.raises(ValueError):
        PrimeField(32001)
    with pytest.raises(ValueError):
        PrimeField(7)


def test_prime_field_arithmetic():
    k = PrimeField(11)
    assert k.add(7, 8) == 4
    assert k.sub(3, 8) == 6
    assert k.mul(5, 9) == 1
    assert k.inv(5) == 9
    assert k.div(1, 5) == 9
    assert k.neg(4) == 7
    assert k.of(-1) == 10
    assert k.of(Fraction(1, 5)) == 9


def test_prime_field_inverse_of_zero():
    k = PrimeField(11)
    with pytest.raises(ZeroDivisionError):
        k.inv(0)


def test_inverse_round_trip():
    k = PrimeField(32003)
    for a in [1, 2, 17, 31999]:
        assert k.mul(a, k.inv(a)) == 1


def test_rational_field():
    k = RationalField()
    assert k.of(3) == Fraction(3)
    assert k.div(k.of(1), k.of(3)) == Fraction(1, 3)
    assert k.inv(Fraction(2, 5)) == Fraction(5, 2)
    with pytest.raises(ZeroDivisionError):
        k.inv(Fraction(0))


def test_field_from_spec():
    assert field_from_spec("rationals") == RationalField()
    assert field_from_spec(101) == PrimeField(101)
    assert field_from_spec("32003") == PrimeField(32003)
    with pytest.raises(ValueError):
        field_from_spec(100)


def test_array_helpers():
    k = PrimeField(11)
    a = k.array([[12, -1], [5, 22]])
    assert a.tolist() == [[1, 10], [5, 0]]
    q = RationalField()
    b = q.array([[1, 2]])
    assert b[0, 1] == Fraction(2)
