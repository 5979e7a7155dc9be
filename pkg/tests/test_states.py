"""Fock representation, restricted vacua and quasi-free states."""

import itertools
import math

import pytest
from hypothesis import given, strategies as st

from cuntzcar.carpoly import CarPolynomial
from cuntzcar.reps import PermRep
from cuntzcar.rfs import variant_rfs
from cuntzcar.states import (
    FockKet,
    OccupationVector,
    QuasiFockState,
    branch_fock_check,
    car_monomials,
    chain_bogoliubov,
    fock_apply,
    fock_vacuum,
    kms_check,
    label_bogoliubov,
    phi_fock_vacuum_check,
    pi_s_apply,
    product_factorization_check,
)

A, AD = CarPolynomial.a, CarPolynomial.adag

word = st.lists(st.tuples(st.integers(1, 4), st.booleans()), max_size=5)
lambdas = st.lists(st.floats(0, 1), min_size=1, max_size=2)


@given(word, st.integers(1, 16))
def test_fock_action_matches_standard_representation(ops, N):
    x = CarPolynomial.from_ops(ops)
    v = FockKet({N - 1: 1})
    assert fock_apply(x, v) == pi_s_apply(x, v)


def test_occupation_vector_index():
    occ = OccupationVector.of(1, 3)
    assert occ.index == 6
    assert OccupationVector.from_index(6) == occ
    assert fock_apply(AD(1) * AD(3), fock_vacuum()) == occ.ket()


@pytest.mark.parametrize("label,count", [((1, 2), 2), ((1, 1, 2), 3), ((1, 2, 2), 3)])
def test_cycle_restrictions_split_into_sectors(label, count):
    rep = PermRep.cycle(label)
    vacua = [((lam, 1), label_bogoliubov(rep, lam)) for lam in range(len(label))]
    assert len(vacua) == count
    assert phi_fock_vacuum_check(rep, vacua, 5).passed


def test_chain_with_period_one_tail_has_many_vacua():
    rep = PermRep.chain((2,), (1,))
    good = [lam for lam in range(-3, 5) if phi_fock_vacuum_check(rep, [((lam, 1), chain_bogoliubov(rep, lam))], 5).passed]
    assert len(good) >= 4


@pytest.mark.parametrize("k", [1, 3, 5, 7])
def test_variant_system_vacua(k):
    check = phi_fock_vacuum_check(PermRep.standard(2), [((0, k), lambda n: False)], 5, rfs=variant_rfs(2))
    assert check.passed


@pytest.mark.parametrize("p", [1, 2, 3])
def test_branch_fock_vacua_and_negative_control(p):
    assert branch_fock_check(p, 6).passed
    assert not branch_fock_check(p, 6, wrong=True).passed


@given(lambdas, word)
def test_state_is_normalized_and_positive(lams, ops):
    st_ = QuasiFockState(tuple(lams))
    assert abs(st_(CarPolynomial.identity()) - 1) < 1e-12
    x = CarPolynomial.from_ops(ops) + CarPolynomial.identity(0.5)
    assert complex(st_(x.star * x)).real >= -1e-12
    assert abs(complex(st_(x.star * x)).imag) < 1e-12


@given(lambdas, word)
def test_product_state_matches_closed_formula(lams, ops):
    st_ = QuasiFockState(tuple(lams))
    x = CarPolynomial.from_ops(ops)
    assert abs(complex(st_(x)) - complex(st_.product_formula(x))) < 1e-12


def test_occupation_values():
    st_ = QuasiFockState((0.2, 0.7))
    assert [st_(CarPolynomial.number(n)) for n in range(1, 5)] == pytest.approx([0.2, 0.7, 0.2, 0.7])
    assert st_(A(1)) == 0
    assert st_(CarPolynomial.number(1) * CarPolynomial.number(3)) == pytest.approx(0.04)


def test_weights_sum_to_one():
    st_ = QuasiFockState((0.2, 0.7))
    w = st_.weights()
    assert sum(w.values()) == pytest.approx(1)
    assert w[1] == pytest.approx(0.8 * 0.3)


def test_mixture_agrees_within_a_block_and_differs_across():
    st_ = QuasiFockState((0.3,))
    one_block = CarPolynomial.number(1)
    assert st_.mixture(one_block) == pytest.approx(st_(one_block))
    two_modes = CarPolynomial.number(1) * CarPolynomial.number(2)
    assert st_(two_modes) == pytest.approx(0.09)
    assert st_.mixture(two_modes) == pytest.approx(0.3)
    assert st_.via_branch(two_modes) == pytest.approx(st_.mixture(two_modes))


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("eps", [(0.3,), (1.0,), (0.3, 1.0), (1.0, 1.0)])
def test_kms_condition(beta, eps):
    st_ = QuasiFockState.from_beta(beta, eps)
    X = car_monomials(2)
    assert max(kms_check(beta, eps, x, y, st_) for x, y in itertools.product(X, X)) < 1e-12


def test_gibbs_parameters():
    st_ = QuasiFockState.from_beta(2.0, (0.3,))
    assert st_.lambdas[0] == pytest.approx(1 / (1 + math.exp(0.6)))


def test_half_filling_is_a_trace():
    st_ = QuasiFockState((0.5,))
    X = car_monomials(2)
    assert max(abs(st_(x * y) - st_(y * x)) for x, y in itertools.product(X, X)) < 1e-15


def test_factorization():
    st_ = QuasiFockState((1.0, 0.5, 0.3))
    assert product_factorization_check(st_, samples=50) < 1e-12


def test_bad_lambdas():
    with pytest.raises(ValueError):
        QuasiFockState((1.5,))
    with pytest.raises(ValueError):
        QuasiFockState(())
