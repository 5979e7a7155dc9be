"""Text syntax: parsing, formatting and error positions."""

import pytest
from hypothesis import given, strategies as st

from cuntzcar.algebra import Element, equals
from cuntzcar.carpoly import CarPolynomial, car_equal
from cuntzcar.morphisms import apply, catalogue
from cuntzcar.parse import ParseError, format_car, format_element, format_value, parse


@pytest.mark.parametrize(
    "text,expected",
    [
        ("s[1;2]", "s[1;2]"),
        ("s[1] s[;2]", "s[1;2]"),
        ("s[1,2;2,1]", "s[1,2;2,1]"),
        ("phi[2,4](a1)", "-a1 a2 + a2* a1"),
        ("hat_phi(2)(a2)", "a2*"),
        ("2 I - 3/2i a1", "2 I - 3/2i a1"),
        ("a1 a2*", "-a2* a1"),
    ],
)
def test_examples(text, expected):
    assert format_value(parse(text)) == expected


def test_morphism_application_matches_catalogue():
    assert equals(parse("rho(s[1;2])"), apply(catalogue("rho"), Element.mono(2, (1,), (2,))))


def test_klein_factor_formatting():
    x = parse("K1 a2")
    assert car_equal(x, CarPolynomial.K(1) * CarPolynomial.a(2))
    assert format_car(x, factor_klein=True) == "K1 a2"


def test_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse("(a1+a2)*")
    assert info.value.pos == 7
    assert "^" in str(info.value)


@pytest.mark.parametrize("text", ["", "s[1;", "a", "3/", "foo(a1)"])
def test_malformed_input(text):
    with pytest.raises(ValueError):
        parse(text)


car_words = st.lists(st.tuples(st.integers(1, 4), st.booleans()), max_size=4)
coeffs = st.integers(-3, 3)


@given(st.lists(st.tuples(coeffs, car_words), max_size=4))
def test_car_round_trip(terms):
    x = CarPolynomial()
    for c, ops in terms:
        x = x + CarPolynomial.from_ops(ops, c)
    assert car_equal(parse(format_car(x)) if x else CarPolynomial(), x)


cuntz_words = st.lists(st.integers(1, 2), max_size=3).map(tuple)


@given(st.lists(st.tuples(coeffs, cuntz_words, cuntz_words), min_size=1, max_size=4))
def test_cuntz_round_trip(terms):
    x = Element.zero(2)
    for c, I, J in terms:
        x = x + Element.mono(2, I, J).scale(c)
    if x:
        assert equals(parse(format_element(x), d=2), x)
