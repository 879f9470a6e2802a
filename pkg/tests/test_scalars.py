from fractions import Fraction

import pytest

from affkz.scalars import Scalar, ZERO, ONE, K


def test_polynomial_arithmetic():
    p = K * K - Scalar.from_int(4)
    q = K + Scalar.from_int(2)
    assert (p / q).canonical_str() == "k-2"
    assert (p / q * q - p).is_zero()
    assert (-(K - K)).is_zero()


def test_rational_normalization():
    # common content and denominator sign are stripped
    a = Scalar.from_fraction(Fraction(2, 3)) * K - Scalar.from_fraction(Fraction(4, 3))
    assert a.canonical_str() == "(2k-4)/3"
    b = ONE / (ZERO - K)
    assert b.canonical_str() == "-1/(k)"


def test_evaluate():
    s = (K * K - ONE) / (K + Scalar.from_int(3))
    assert s.evaluate(Fraction(1, 2)) == Fraction(-3, 14)
    with pytest.raises(ZeroDivisionError):
        s.evaluate(-3)


def test_degree_and_predicates():
    assert K.degree() == 1
    assert (K * K * K).degree() == 3
    assert ZERO.is_zero() and ONE.is_one()
    assert K.is_polynomial()
    assert not (ONE / K).is_polynomial()


def test_canonical_str_examples():
    s = Scalar.from_int(17) * K * K - Scalar.from_int(83) * K + Scalar.from_int(98)
    assert s.canonical_str() == "17k^2-83k+98"
    assert Scalar.from_fraction(Fraction(-1, 2)).canonical_str() == "-1/2"
    assert (Scalar.from_fraction(Fraction(3, 2)) * K).canonical_str() == "3k/2"


def test_hash_eq_consistency():
    a = (K + ONE) * (K - ONE)
    b = K * K - ONE
    assert a == b and hash(a) == hash(b)
