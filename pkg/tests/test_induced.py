"""CAR endomorphisms induced from Cuntz endomorphisms."""

import numpy as np
import pytest

from cuntzcar.carpoly import CarPolynomial, K_product, car_equal, gamma_parity
from cuntzcar.induced import (
    closed_form_morphism,
    closed_form_names,
    crosscheck,
    induced_automorphism,
    is_even_image,
    restrict_by_name,
    restrict_endomorphism,
)
from cuntzcar.rfs import variant_endomorphism

A, AD = CarPolynomial.a, CarPolynomial.adag


@pytest.mark.parametrize("name", closed_form_names(3))
def test_closed_forms_agree_with_restriction(name):
    rep = crosscheck(name, 5)
    assert rep.passed, rep.failures[:3]


@pytest.mark.parametrize("n", range(1, 6))
def test_rho_shifts_modes(n):
    assert car_equal(restrict_by_name("rho").image(n), CarPolynomial.K(1) * A(n + 1))


def test_phi24_first_mode():
    assert car_equal(restrict_by_name("phi[2,4]").image(1), -(A(1) * (A(2) + AD(2))))


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_hat_phi_table(k):
    m = restrict_by_name(f"hat_phi({k})")
    for n in range(1, 6):
        expected = A(n) if n < k else (AD(k) if n == k else -A(n))
        assert car_equal(m.image(n), expected), (k, n)


@pytest.mark.parametrize("p", [1, 2, 3])
def test_rho_powers(p):
    m = closed_form_morphism(f"rho^{p}")
    for n in range(1, 5):
        assert car_equal(m.image(n), K_product(range(1, p + 1)) * A(n + p))


@pytest.mark.parametrize("p", [1, 2, 3])
def test_phi_sigma_lands_in_even_part(p):
    assert is_even_image(closed_form_morphism(f"phi_sigma({p})"), 5)


@pytest.mark.parametrize("name", ["rho", "phi[1,3]", "phi_sigma(2)", "hat_phi(2)"])
def test_induced_maps_preserve_car(name):
    assert restrict_by_name(name).check_car(4).passed


def test_composition_matches_power():
    rho = restrict_by_name("rho")
    assert rho.compose(rho).equals(closed_form_morphism("rho^2"), 4)


def test_alpha_is_an_involution():
    alpha = restrict_by_name("alpha")
    twice = alpha.compose(alpha)
    assert all(car_equal(twice.image(n), A(n)) for n in range(1, 5))


def test_gauge_variant_endomorphism_rejected():
    with pytest.raises(ValueError):
        restrict_endomorphism(variant_endomorphism(1))


def test_unknown_closed_form():
    with pytest.raises(KeyError):
        closed_form_morphism("phi_tau(2)")


def test_induced_automorphism_of_diagonal_unitary():
    u = np.diag([1, -1])
    m = induced_automorphism(u)
    assert m.check_car(4).passed
    assert car_equal(m.image(1), -A(1))


def test_induced_automorphism_of_rotation_preserves_car():
    th = 0.7
    u = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
    m = induced_automorphism(u)
    assert m.check_car(3, tol=1e-12).passed
    assert gamma_parity(m.image(1)) in ("odd", "mixed", "even")


def test_induced_automorphism_rejects_bad_size():
    with pytest.raises(ValueError):
        induced_automorphism(np.eye(3))
