"""Cuntz relations, normal forms and canonical printing in O_d."""

import pytest
from hypothesis import given, strategies as st

from cuntzcar.algebra import (
    Element,
    adjoint,
    canonical_form,
    check_cuntz_family,
    equals,
    flatten,
    gauge_degree_split,
    is_zero_element,
)
from cuntzcar.parse import format_element


def words(d, max_len=3):
    return st.lists(st.integers(1, d), max_size=max_len).map(tuple)


@st.composite
def monomials(draw, d=None):
    d = d or draw(st.sampled_from([2, 3, 4]))
    return Element.mono(d, draw(words(d)), draw(words(d)), draw(st.sampled_from([1, -1, 2])))


@st.composite
def elements(draw, d):
    terms = draw(st.lists(monomials(d), min_size=1, max_size=3))
    out = Element.zero(d)
    for t in terms:
        out = out + t
    return out


@pytest.mark.parametrize("d", [2, 3, 4])
def test_cr1_and_cr2(d):
    one, zero = Element.identity(d), Element.zero(d)
    total = zero
    for i in range(1, d + 1):
        s_i = Element.gen(d, i)
        total = total + s_i * s_i.star
        for j in range(1, d + 1):
            assert equals(s_i.star * Element.gen(d, j), one if i == j else zero)
    assert equals(total, one)


def test_monomial_product_contracts_matching_letters():
    x = Element.mono(2, (1, 2), (1,))
    y = Element.mono(2, (1, 1), ())
    assert x * y == Element.mono(2, (1, 2, 1), ())
    assert Element.mono(2, (), (2,)) * Element.gen(2, 1) == Element.zero(2)


def test_sum_of_complete_family_is_identity_after_flattening():
    x = Element.mono(2, (1,), (1,)) + Element.mono(2, (2,), (2,))
    assert equals(x, Element.identity(2))
    assert x == Element.identity(2)
    assert len(x) == 2
    assert equals(flatten(Element.identity(2), 1), x)


@given(monomials(2), monomials(2), monomials(2))
def test_associativity_o2(x, y, z):
    assert equals((x * y) * z, x * (y * z))


@given(st.data())
def test_adjoint_reverses_products(data):
    d = data.draw(st.sampled_from([2, 3, 4]))
    x, y = data.draw(elements(d)), data.draw(elements(d))
    assert equals(adjoint(x * y), adjoint(y) * adjoint(x))
    assert equals(adjoint(adjoint(x)), x)


@given(st.data())
def test_distributivity(data):
    d = data.draw(st.sampled_from([2, 3]))
    x, y, z = (data.draw(elements(d)) for _ in range(3))
    assert equals(x * (y + z), x * y + x * z)


@given(monomials(3))
def test_canonical_form_is_equal_to_input(x):
    assert equals(canonical_form(x), x)


def test_canonical_form_merges_complete_families():
    x = Element.mono(2, (1,), (2,)) * Element.mono(2, (2,), (1,)) + Element.mono(2, (2,), (1,)) * Element.mono(2, (1,), (2,))
    assert canonical_form(x) == Element.identity(2)
    y = (
        Element.mono(2, (1, 1), (1, 1), 2)
        + Element.mono(2, (1, 2), (2, 1), 2)
        + Element.mono(2, (2,), (2,))
    )
    assert equals(canonical_form(y), y)
    assert format_element(canonical_form(y)) == "2 s[1;1] + s[2;2]"


def test_gauge_degree_split():
    x = Element.mono(2, (1, 2), ()) + Element.mono(2, (1,), (2,)) + Element.gen(2, 1)
    parts = gauge_degree_split(x)
    assert sorted(parts) == [0, 1, 2]
    assert parts[0] == Element.mono(2, (1,), (2,))


def test_zero_detection_handles_cancellation():
    x = Element.identity(2) - Element.mono(2, (1,), (1,)) - Element.mono(2, (2,), (2,))
    assert is_zero_element(x)


def test_check_cuntz_family_rejects_non_isometries():
    assert check_cuntz_family([Element.gen(2, 1), Element.gen(2, 2)])
    assert not check_cuntz_family([Element.gen(2, 1), Element.gen(2, 1)])
    assert not check_cuntz_family([Element.gen(2, 1)], 1)


def test_bad_letter_raises():
    with pytest.raises(ValueError):
        Element.mono(2, (3,), ())
