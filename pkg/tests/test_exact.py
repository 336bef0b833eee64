import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hermite2d.exact import (
    I,
    ONE,
    SQRT2,
    ZERO,
    ExactScalar,
    GaussianRational,
    NotRealError,
    ScalarParseError,
    parse_scalar,
)

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(ExactScalar, small, small, small, small)
reals = st.builds(lambda a, c: ExactScalar(a, 0, c, 0), small, small)


def test_mul_examples():
    assert ONE * SQRT2 == SQRT2
    assert SQRT2 * SQRT2 == ExactScalar(2)
    assert I * I == ExactScalar(-1)


def test_inverse_examples():
    assert ExactScalar(2).inverse() == ExactScalar(Fraction(1, 2))
    assert SQRT2.inverse() == ExactScalar(0, 0, Fraction(1, 2))
    x = ONE + SQRT2
    y = ExactScalar(-1, 0, 1)
    # oracle: direct multiplication
    assert x * y == ONE
    assert x.inverse() == y


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_conjugate_examples():
    assert I.conjugate() == -I
    x = ExactScalar(1, 2, 3, -1)
    assert x.conjugate() == ExactScalar(1, -2, 3, 1)
    r = ExactScalar(Fraction(3, 7), 0, -2)
    assert r.conjugate() == r


def test_sign_examples():
    a = ExactScalar(3, 0, -2)
    assert a.sign() == 1
    assert 3 - 2 * math.sqrt(2) > 0
    assert ExactScalar(1, 0, -1).sign() == -1
    assert ZERO.sign() == 0
    with pytest.raises(NotRealError):
        I.sign()


def test_to_complex():
    assert ExactScalar(Fraction(1, 2), Fraction(1, 2)).to_complex() == 0.5 + 0.5j
    assert SQRT2.to_complex().real == 1.4142135623730951
    with pytest.raises(OverflowError):
        ExactScalar(10 ** 400).to_complex()


def test_to_complex_cancellation():
    # 99 - 70 sqrt2 is about 0.00505; naive subtraction loses digits
    x = ExactScalar(99, 0, -70)
    exact = 1 / (99 + 70 * math.sqrt(2))
    assert math.isclose(float(x), exact, rel_tol=4 * 2 ** -53)


def test_rendering():
    assert str(ExactScalar(Fraction(-1, 2))) == "-1/2"
    assert str(ExactScalar(1, 2)) == "1+2i"
    assert str(ExactScalar(0, -1)) == "-i"
    assert str(ExactScalar(1, 2, 3, -1)) == "(1+2i)+(3-i)√2"
    assert str(ExactScalar(0, 0, 1)) == "(1)√2"
    assert str(ExactScalar(1, 0, 1)) == "1+(1)√2"
    assert str(ZERO) == "0"
    assert str(GaussianRational(Fraction(1, 3), Fraction(-1, 5))) == "1/3-1/5i"


@pytest.mark.parametrize(
    "text, expected",
    [
        ("1/2+1/3i", ExactScalar(Fraction(1, 2), Fraction(1, 3))),
        ("-i", ExactScalar(0, -1)),
        ("(1+2i)+(3-i)√2", ExactScalar(1, 2, 3, -1)),
        ("sqrt2", SQRT2),
        ("2*i", ExactScalar(0, 2)),
        ("  -3/4 ", ExactScalar(Fraction(-3, 4))),
    ],
)
def test_parse(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("text, token", [("1+x", "x"), ("(1", "<end>"), ("1/0", "1/0"), ("", "<empty>")])
def test_parse_errors_name_token(text, token):
    with pytest.raises(ScalarParseError) as info:
        parse_scalar(text)
    assert info.value.token == token


@given(scalars)
def test_render_parse_roundtrip(x):
    assert parse_scalar(str(x)) == x


@given(scalars, scalars, scalars)
def test_field_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + y == y + x
    assert x - x == ZERO


@settings(max_examples=1000)
@given(scalars)
def test_inverse_two_sided(x):
    if x.is_zero():
        return
    inv = x.inverse()
    assert x * inv == ONE
    assert inv * x == ONE


@given(reals)
def test_sign_matches_float(x):
    f = float(x)
    if abs(f) > 1e-6:
        assert x.sign() == (1 if f > 0 else -1)


@given(scalars, scalars)
def test_conjugate_is_homomorphism(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert (x + y).conjugate() == x.conjugate() + y.conjugate()
    assert x.conjugate().conjugate() == x


@given(scalars)
def test_zero_representation_unique(x):
    assert (x == ZERO) == (x.unit == 0 and x.radical == 0)


def test_int_and_fraction_interop():
    assert ExactScalar(3) == 3
    assert hash(ExactScalar(3)) == hash(3)
    assert 1 - SQRT2 == ExactScalar(1, 0, -1)
    assert Fraction(1, 2) * ExactScalar(2) == ONE
    assert SQRT2 ** -2 == ExactScalar(Fraction(1, 2))
