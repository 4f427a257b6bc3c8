from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qgroupoid.errors import DivisionByZero, MismatchedField, UnsupportedIndex
from qgroupoid.scalars import (QuadScalar, beta_of, delta_of, field_tag, format_scalar, parse_scalar,
                               quad_arith)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def quads(d):
    return st.builds(lambda a, b: QuadScalar(a, b, d), rationals, rationals)


fields = st.sampled_from([2, 3, 5])


@given(fields.flatmap(lambda d: st.tuples(quads(d), quads(d), quads(d))))
def test_field_axioms(xyz):
    x, y, z = xyz
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x and x * y == y * x
    assert x - x == 0 and x + 0 == x and x * 1 == x
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(quads(5), rationals)
def test_mixed_with_fraction(x, r):
    assert x + r == r + x
    assert x * r == r * x
    assert (r - x) == -(x - r)
    if x:
        assert (r / x) * x == r


@given(quads(3))
def test_norm_is_multiplicative_and_conjugation(x):
    y = QuadScalar(2, -1, 3)
    assert (x * y).norm() == x.norm() * y.norm()
    assert x * x.conjugate() == x.norm()


def test_hash_agrees_with_rational_equality():
    assert QuadScalar(Fraction(1, 2), 0, 5) == Fraction(1, 2)
    assert hash(QuadScalar(Fraction(1, 2), 0, 5)) == hash(Fraction(1, 2))
    assert {QuadScalar(3, 0, 2): 1}[Fraction(3)] == 1


def test_mismatched_fields():
    with pytest.raises(MismatchedField):
        QuadScalar(1, 1, 2) + QuadScalar(1, 1, 3)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        QuadScalar(0, 0, 5).inverse()
    with pytest.raises(ZeroDivisionError):
        quad_arith(QuadScalar(1, 0, 5), QuadScalar(0, 0, 5), "div")


def test_non_squarefree_rejected():
    with pytest.raises(ValueError):
        QuadScalar(1, 1, 4)


def test_beta_delta():
    for n in (2, 3):
        assert delta_of(n) * delta_of(n) == beta_of(n)
    assert beta_of(3) == 3
    # golden ratio squared
    assert beta_of(2) == QuadScalar(Fraction(3, 2), Fraction(1, 2), 5)
    with pytest.raises(UnsupportedIndex):
        beta_of(4)


def test_str():
    assert str(QuadScalar(0, -1, 3)) == "-sqrt(3)"
    assert str(QuadScalar(2, -1, 3)) == "2-sqrt(3)"
    assert str(QuadScalar(1, Fraction(1, 3), 3)) == "1+1/3*sqrt(3)"
    assert str(QuadScalar(Fraction(1, 2), 0, 5)) == "1/2"


@given(fields.flatmap(quads))
def test_encoding_round_trip(x):
    assert parse_scalar(format_scalar(x)) == x
    assert field_tag(x) == x.d


def test_parse_variants():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar(5) == 5
    assert parse_scalar("1/2", 5) == QuadScalar(Fraction(1, 2), 0, 5)
    with pytest.raises(ValueError):
        parse_scalar(True)
    with pytest.raises(MismatchedField):
        parse_scalar({"a": "1", "b": "1", "d": 3}, 5)
