"""Normal ordering and the canonical anticommutation relations."""

import pytest
from hypothesis import given, strategies as st

from cuntzcar.carpoly import (
    CarPolynomial,
    K_product,
    car_anticommutator,
    car_equal,
    car_normal_form,
    gamma_parity,
    normal_order,
)

A, AD, ONE = CarPolynomial.a, CarPolynomial.adag, CarPolynomial.identity()

ops = st.lists(st.tuples(st.integers(1, 4), st.booleans()), max_size=5)


def poly(op_list):
    out = CarPolynomial.identity()
    for mode, dag in op_list:
        out = out * (AD(mode) if dag else A(mode))
    return out


@pytest.mark.parametrize("m", range(1, 5))
@pytest.mark.parametrize("n", range(1, 5))
def test_car_relations(m, n):
    assert not car_anticommutator(A(m), A(n))
    assert car_equal(car_anticommutator(A(m), AD(n)), ONE if m == n else CarPolynomial())


def test_square_of_annihilator_vanishes():
    assert not A(2) * A(2)
    assert not AD(3) * AD(3)


def test_normal_order_sign():
    assert normal_order(((1, False), (2, True))) == ((((2, True), (1, False)), -1),)
    assert dict(normal_order(((1, False), (1, True)))) == {(): 1, ((1, True), (1, False)): -1}


def test_klein_operator():
    K = CarPolynomial.K(2)
    assert car_equal(K * K, ONE)
    assert car_equal(K * A(2), -(A(2) * K))
    assert car_equal(K * A(1), A(1) * K)
    assert car_equal(K_product([1, 2]), CarPolynomial.K(1) * CarPolynomial.K(2))


@given(ops, ops, ops)
def test_associativity(x, y, z):
    X, Y, Z = poly(x), poly(y), poly(z)
    assert car_equal((X * Y) * Z, X * (Y * Z))


@given(ops, ops)
def test_adjoint_reverses_products(x, y):
    X, Y = poly(x), poly(y)
    assert car_equal((X * Y).star, Y.star * X.star)


@given(ops)
def test_normal_form_is_idempotent(x):
    X = poly(x)
    assert car_equal(car_normal_form(car_normal_form(X)), car_normal_form(X))
    assert car_equal(CarPolynomial.from_ops(x), X)


def test_gamma_parity():
    assert gamma_parity(A(1)) == "odd"
    assert gamma_parity(A(1) * A(2) + ONE) == "even"
    assert gamma_parity(A(1) + ONE) == "mixed"
    assert gamma_parity(CarPolynomial()) == "even"


def test_number_operator_is_projection():
    N = CarPolynomial.number(3)
    assert car_equal(N * N, N)
    assert car_equal(N.star, N)
