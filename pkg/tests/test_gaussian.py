from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crjet import GaussianRational, I
from crjet.gaussian import ONE, ZERO

from _util import gaussian_rationals


@given(gaussian_rationals(), gaussian_rationals(), gaussian_rationals())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + ZERO == a and a * ONE == a
    if a:
        assert a * a.inverse() == ONE


@given(gaussian_rationals())
def test_str_round_trip(a):
    assert GaussianRational.parse(str(a)) == a


@given(gaussian_rationals(), gaussian_rationals())
def test_conjugate_is_field_automorphism(a, b):
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


def test_canonical_form():
    x = GaussianRational(Fraction(2, -4), Fraction(6, 3))
    assert x.re.denominator == 2 and x.re.numerator == -1
    assert x == GaussianRational(Fraction(-1, 2), 2)
    assert hash(GaussianRational(3)) == hash(3)


def test_serialization_examples():
    assert str(GaussianRational(Fraction(1, 2), Fraction(-3, 2))) == "1/2-3/2*i"
    assert str(2 * I) == "2*i"
    assert GaussianRational.parse("-3/2*i") == GaussianRational(0, Fraction(-3, 2))
    assert GaussianRational.parse("1/2+3/4*i") == GaussianRational(Fraction(1, 2), Fraction(3, 4))
    with pytest.raises(ValueError):
        GaussianRational.parse("abc")


def test_i_squared():
    assert I * I == -ONE
    assert (2 * I) ** 2 == GaussianRational(-4)
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
