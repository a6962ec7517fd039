from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from freeboolean.scalars import (
    GaussianRational,
    conj,
    format_decimal,
    format_scalar,
    parse_scalar,
    scalar_to_json,
    simplify,
)

fractions = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
gaussians = st.builds(GaussianRational, fractions, fractions)


def test_parse_and_format():
    assert parse_scalar("3/6") == Fraction(1, 2)
    assert parse_scalar(4) == 4
    assert parse_scalar({"re": "1", "im": "-1/2"}) == GaussianRational(1, Fraction(-1, 2))
    assert parse_scalar({"re": "2", "im": "0"}) == 2
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(GaussianRational(1, -2)) == "1-2i"
    assert format_decimal(Fraction(1, 3)).startswith("~0.3333")
    for bad in (0.5, True, [1]):
        with pytest.raises(TypeError):
            parse_scalar(bad)
    with pytest.raises(ValueError):
        parse_scalar({"re": 1, "x": 2})


@given(gaussians, gaussians)
def test_field_axioms(a, b):
    assert (a + b) - b == a
    assert a * b == b * a
    if b:
        assert (a / b) * b == a
    assert conj(a * b) == conj(a) * conj(b)


@given(st.one_of(fractions, gaussians))
def test_json_round_trip(x):
    assert parse_scalar(scalar_to_json(x)) == simplify(x)


def test_mixed_with_fractions():
    i = GaussianRational(0, 1)
    assert i * i == -1
    assert 2 + i == GaussianRational(2, 1)
    assert 1 / i == -i
    assert conj(Fraction(2, 3)) == Fraction(2, 3)
