"""Embeddings, endomorphisms and their algebraic relations."""

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cuntzcar.algebra import Element, check_cuntz_family, equals, gauge_degree_split
from cuntzcar.morphisms import (
    SECOND_ORDER_COMPOSITIONS,
    SECOND_ORDER_CYCLES,
    SECOND_ORDER_IMAGES,
    SECOND_ORDER_RELATIONS,
    alpha_theta,
    apply,
    canonical_endomorphism,
    catalogue,
    compose,
    compose_names,
    cuntz_embedding,
    endomorphism_of_unitary,
    gauge_automorphism,
    general_endomorphism,
    generalized_cuntz_embedding,
    homogeneous_embedding,
    homogeneous_endomorphism,
    identity,
    inductive_extension,
    label_to_standard_endomorphism,
    monomial_embedding,
    phi_sigma,
    phi_sigma_closure,
    phi_sigma_multi,
    rho_power,
    u_d_automorphism,
    unitary_of_endomorphism,
)
from cuntzcar.parse import format_element, parse


def same(m1, m2):
    return all(equals(x, y) for x, y in zip(m1.images, m2.images))


@pytest.mark.parametrize(
    "m",
    [cuntz_embedding(k) for k in range(2, 6)]
    + [generalized_cuntz_embedding(3, n) for n in (1, 2)]
    + [inductive_extension(cuntz_embedding(3))]
    + [homogeneous_embedding(2, p) for p in range(1, 5)]
    + [monomial_embedding(w) for w in itertools.product((1, 2), repeat=3)],
    ids=lambda m: m.name,
)
def test_embeddings_are_cuntz_families(m):
    assert check_cuntz_family(m.images, m.source_d)


def test_cuntz_embedding_images():
    m = cuntz_embedding(3)
    assert [format_element(x) for x in m.images] == ["s[1]", "s[2,1]", "s[2,2]"]


def test_monomial_embedding_rejects_bad_words():
    with pytest.raises(ValueError):
        monomial_embedding(())
    with pytest.raises(ValueError):
        monomial_embedding((1, 3))


@pytest.mark.parametrize("name", sorted(SECOND_ORDER_CYCLES))
def test_second_order_endomorphism_matches_tabulated_images(name):
    m = catalogue(name)
    assert check_cuntz_family(m.images, 2)
    for x, y in zip(m.images, SECOND_ORDER_IMAGES[name]):
        assert equals(x, y)


def test_there_are_24_second_order_endomorphisms():
    assert len(SECOND_ORDER_CYCLES) == 24
    images = [tuple(format_element(x) for x in catalogue(n).images) for n in SECOND_ORDER_CYCLES]
    assert len(set(images)) == 24


@pytest.mark.parametrize("name,factors", SECOND_ORDER_RELATIONS + SECOND_ORDER_COMPOSITIONS)
def test_second_order_relations(name, factors):
    assert same(catalogue(name), compose_names(factors))


@pytest.mark.parametrize("p,q", [(1, 2), (1, 3), (2, 3)])
def test_phi_sigma_commute(p, q):
    assert same(compose(phi_sigma(p), phi_sigma(q)), compose(phi_sigma(q), phi_sigma(p)))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_phi_sigma_square(p):
    assert same(compose(phi_sigma(p), phi_sigma(p)), phi_sigma(2 * p))


def test_phi_sigma_one_is_phi_24():
    x = parse("s[2,2;1] + s[2,1;2]")
    assert equals(phi_sigma(1).images[1], x)
    assert same(phi_sigma(1), catalogue("phi[2,4]"))


@pytest.mark.parametrize("P,Q", [((1,), (1, 2, 3)), ((2,), (1, 2, 4)), ((1, 2, 3), (2, 3, 4))])
def test_phi_sigma_closure(P, Q):
    R = phi_sigma_closure(P, Q)
    assert len(R) % 2 == 1
    assert same(compose(phi_sigma_multi(P), phi_sigma_multi(Q)), phi_sigma_multi(R))


def test_phi_sigma_multi_rejects_even_length():
    with pytest.raises(ValueError):
        phi_sigma_multi((1, 2))


@pytest.mark.parametrize("name", ["rho", "phi[1,2]", "phi[1,3,2,4]", "hat_phi(2)"])
def test_unitary_round_trip(name):
    m = catalogue(name)
    u = unitary_of_endomorphism(m)
    assert equals(u * u.star, Element.identity(2))
    assert same(endomorphism_of_unitary(u), m)


def test_identity_has_unit_unitary():
    assert equals(unitary_of_endomorphism(identity(2)), Element.identity(2))


def test_non_unitary_rejected():
    with pytest.raises(ValueError):
        endomorphism_of_unitary(Element.gen(2, 1))


def test_new_embedding_of_o3_from_rho():
    rho = canonical_endomorphism(2)
    u = unitary_of_endomorphism(rho)
    first = [Element.gen(2, 1), Element.word(2, (2, 1)), Element.word(2, (2, 2))]
    second = [u * x for x in first]
    assert equals(second[0], rho.images[0])
    assert equals(second[1], Element.word(2, (1, 2)))
    assert equals(second[2], Element.word(2, (2, 2)))
    assert check_cuntz_family(second, 3)


def test_general_endomorphism_reconstructs_identity():
    m = general_endomorphism([None, None, identity(2)], 2)
    assert same(m, identity(2))


def test_general_endomorphism_checks_sizes():
    with pytest.raises(ValueError):
        general_endomorphism([None, None, cuntz_embedding(3)], 2)


def test_label_endomorphism_for_12():
    m = label_to_standard_endomorphism((1, 2))
    assert equals(m.images[0], Element.word(2, (1, 2)))
    assert equals(m.images[1], parse("s[2;1] + s[1,1;2]"))
    assert check_cuntz_family(m.images, 2)
    degrees = gauge_degree_split(m.images[0])
    assert list(degrees) == [2]


def test_label_endomorphism_rejects_periodic_labels():
    with pytest.raises(ValueError):
        label_to_standard_endomorphism((1, 2, 1, 2))


def test_o3_label_fixture_is_an_endomorphism():
    m = catalogue("pi_L(1,2,1,3)")
    assert check_cuntz_family(m.images, 3)
    assert len(m.images[2]) == 7


def test_homogeneous_endomorphism_identity_unitary():
    m = homogeneous_endomorphism(2, 1, np.eye(4, dtype=int))
    assert same(m, identity(2))


def test_u_d_and_gauge_automorphisms():
    swap = u_d_automorphism(np.array([[0, 1], [1, 0]]))
    assert same(swap, catalogue("phi[1,2][3,4]"))
    z = gauge_automorphism(-1)
    assert equals(z.images[0], -Element.gen(2, 1))
    with pytest.raises(ValueError):
        u_d_automorphism(np.array([[1, 1], [0, 1]]))


@given(st.floats(-3, 3), st.floats(-3, 3))
def test_alpha_theta_is_a_group(a, b):
    lhs = compose(alpha_theta(a), alpha_theta(b))
    rhs = alpha_theta(a + b)
    for x, y in zip(lhs.images, rhs.images):
        assert all(abs(complex(c)) < 1e-12 for _, c in x - y)


def test_rho_power_composes():
    assert same(rho_power(2, 2), compose(canonical_endomorphism(2), canonical_endomorphism(2)))
    x = apply(rho_power(2, 1), Element.gen(2, 1))
    assert equals(x, parse("s[1,1;1] + s[2,1;2]"))
