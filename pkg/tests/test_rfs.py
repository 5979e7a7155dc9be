"""Recursive fermion systems and the CAR embedding."""

import pytest

from cuntzcar.algebra import Element, equals, words
from cuntzcar.carpoly import CarPolynomial, car_equal
from cuntzcar.rfs import (
    from_cuntz,
    reduction_check,
    rfs_fixture,
    seed_reduction_check,
    standard_rfs,
    to_cuntz,
    u1_monomial_to_car,
    verify_axioms,
    verify_car,
)

CAR_BOUNDS = {"SR1": 8, "SR2": 6, "SR3": 6, "SR4": 6, "VR1": 5, "VR2": 5}


@pytest.mark.parametrize("name,n_max", sorted(CAR_BOUNDS.items()))
def test_car_relations_of_each_system(name, n_max):
    rep = verify_car(rfs_fixture(name), n_max)
    assert rep.passed, rep.failures[:3]


@pytest.mark.parametrize("name", ["SR1", "SR2", "SR3", "VR1", "VR2"])
def test_axioms(name):
    rep = verify_axioms(rfs_fixture(name))
    assert rep.passed, rep.failures[:3]


def test_first_mode_of_sr1():
    r = standard_rfs(1)
    assert equals(r.car_image(1), Element.mono(2, (1,), (2,)))
    assert equals(r.car_image(2), Element.mono(2, (1, 1), (2, 1)) - Element.mono(2, (2, 1), (2, 2)))


@pytest.mark.parametrize("p,r", [(2, 1), (3, 1), (4, 1), (4, 2)])
def test_reductions(p, r):
    assert reduction_check(p, r, 5).passed


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_seed_reductions(p):
    assert seed_reduction_check(p).passed


def gauge_invariant_monomials(max_len):
    for k in range(max_len + 1):
        for I in words(2, k):
            for J in words(2, k):
                yield I, J


def test_u1_round_trip_all_monomials():
    count = 0
    for I, J in gauge_invariant_monomials(4):
        assert equals(to_cuntz(u1_monomial_to_car(I, J)), Element.mono(2, I, J)), (I, J)
        count += 1
    assert count == 341


def test_from_cuntz_inverts_to_cuntz():
    x = CarPolynomial.adag(2) * CarPolynomial.a(1) + CarPolynomial.number(3).scale(2)
    assert car_equal(from_cuntz(to_cuntz(x)), x)


def test_gauge_variant_element_has_no_car_preimage():
    with pytest.raises(ValueError):
        from_cuntz(Element.gen(2, 1))


def test_sr2_uses_four_generators():
    r = standard_rfs(2)
    assert r.d == 4 and len(r.seeds) == 2
    assert sorted(r.signs) == [-1, -1, 1, 1]


def test_unknown_fixture():
    with pytest.raises(KeyError):
        rfs_fixture("XR9")
