from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from clarr.errors import MixedExtension
from clarr.scalars import QuadScalar, common_ext, render, sqrt_in, sqrt_in_field, squarefree_part

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)


def test_conjugate_product_demotes_to_rational():
    x = QuadScalar(1, 1, 2)
    p = x * QuadScalar(1, -1, 2)
    assert p == -1
    assert isinstance(p, Fraction)


def test_mixed_extensions_raise():
    with pytest.raises(MixedExtension):
        QuadScalar(0, 1, 2) + QuadScalar(0, 1, 3)
    with pytest.raises(MixedExtension):
        common_ext([QuadScalar(0, 1, 2), QuadScalar(1, 1, -1)])


def test_rational_mixing():
    x = QuadScalar(1, 2, 5)
    assert x + 1 == QuadScalar(2, 2, 5)
    assert 3 * x == QuadScalar(3, 6, 5)
    assert (x - x) == 0
    assert x / x == 1


def test_render():
    assert render(Fraction(3, 4)) == "3/4"
    assert render(Fraction(-2)) == "-2"
    assert render(QuadScalar(Fraction(1, 2), Fraction(-3, 2), 13)) == "1/2 - 3/2*sqrt(13)"


@pytest.mark.parametrize("q,m", [(8, 2), (Fraction(9, 4), 0), (-3, -3), (Fraction(-1, 12), -3), (0, 0)])
def test_sqrt_in_field(q, m):
    r, tag = sqrt_in_field(q)
    assert tag == m
    assert r * r == q


def test_squarefree_part():
    assert squarefree_part(72) == 2
    assert squarefree_part(-45) == -5
    assert squarefree_part(1) == 1


def test_sqrt_inside_extension():
    x = QuadScalar(3, 2, 2)  # (1 + sqrt 2)^2
    r = sqrt_in(x)
    assert r * r == x
    assert sqrt_in(QuadScalar(0, 1, 2)) is None
    assert sqrt_in(Fraction(3), 2) is None


@given(rationals, rationals, rationals, rationals)
def test_field_axioms(a, b, c, e):
    x = QuadScalar.make(a, b, 7)
    y = QuadScalar.make(c, e, 7)
    assert x * y == y * x
    assert (x + y) - y == x
    if y:
        assert (x / y) * y == x


@given(rationals.filter(lambda q: q != 0))
def test_sqrt_roundtrip(q):
    r, _ = sqrt_in_field(q)
    assert r * r == q


def test_hash_consistent_with_rational():
    assert hash(QuadScalar(5, 0, 0)) == hash(Fraction(5))
    assert QuadScalar(5, 0, 0) == Fraction(5)
