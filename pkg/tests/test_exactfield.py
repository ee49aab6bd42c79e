from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from padic_chabauty.errors import FieldMismatch, InvalidInput
from padic_chabauty.exactfield import (QuadElement, is_squarefree, parse, rational_sqrt,
                                       trace_norm)

fractions = st.builds(Fraction, st.integers(-1000, 1000), st.integers(1, 50))
fields = st.sampled_from([-1, -2, -3, -7, 2, 3, 5, 13])


def element(d):
    return st.builds(lambda a, b: QuadElement(a, b, d), fractions, fractions)


class TestBasics:
    def test_i_squared(self):
        i = QuadElement(0, 1, -1)
        assert i * i == -1

    def test_mixed_fields(self):
        with pytest.raises(FieldMismatch):
            QuadElement(0, 1, -1) + QuadElement(0, 1, 5)

    def test_non_squarefree(self):
        with pytest.raises(InvalidInput):
            QuadElement(0, 1, 4)

    def test_squarefree(self):
        assert is_squarefree(-1) and is_squarefree(10)
        assert not is_squarefree(12) and not is_squarefree(-9)

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDivisionError):
            QuadElement(0, 0, -1).inverse()

    def test_rational_sqrt(self):
        assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
        assert rational_sqrt(Fraction(2)) is None
        assert rational_sqrt(Fraction(-1)) is None

    def test_sqrt_in_field(self):
        x = QuadElement(3, 4, -1)  # (2 + i)^2
        r = x.sqrt()
        assert r is not None and r * r == x
        assert QuadElement(0, 1, -1).sqrt() is None

    def test_trace_norm(self):
        assert trace_norm(QuadElement(1, 2, -1)) == (2, 5)


class TestParse:
    @pytest.mark.parametrize("text, a, b", [
        ("2*s", 0, 2), ("-2*s", 0, -2), ("1+s", 1, 1), ("3 - 2*s", 3, -2),
        ("s", 0, 1), ("-s", 0, -1), ("1/2", Fraction(1, 2), 0), ("-4", -4, 0),
    ])
    def test_examples(self, text, a, b):
        assert parse(text, -1) == QuadElement(a, b, -1)

    @pytest.mark.parametrize("bad", ["", "2**s", "x", "1.5", "s s"])
    def test_rejects(self, bad):
        with pytest.raises(InvalidInput):
            parse(bad, -1)


@settings(max_examples=300, deadline=None)
@given(fields.flatmap(lambda d: st.tuples(element(d), element(d), element(d))))
def test_field_axioms(triple):
    x, y, z = triple
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@settings(max_examples=300, deadline=None)
@given(fields.flatmap(lambda d: st.tuples(element(d), element(d))))
def test_norm_is_multiplicative(pair):
    x, y = pair
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x + y).trace() == x.trace() + y.trace()
    assert x * x.conj() == x.norm()


@settings(max_examples=300, deadline=None)
@given(fields.flatmap(element))
def test_str_round_trip(x):
    assert parse(str(x), x.d) == x
