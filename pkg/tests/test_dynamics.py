"""Time evolutions induced from one-parameter unitary groups."""

import math

import pytest
from hypothesis import given, strategies as st

from cuntzcar.carpoly import max_abs_coeff
from cuntzcar.dynamics import (
    example_morphism,
    generator_check,
    npoint,
    overlap,
    particle_number_expectation,
    particle_number_table,
    rotation_matrix,
    transported_tau,
)
from cuntzcar.states import OccupationVector
from cuntzcar.suites import DYNAMICS_MODES, npoint_cases, sample_times, table_cases

import numpy as np

TIMES = sample_times(8)
times = st.floats(0.05, 3.0)


@pytest.mark.parametrize("id", sorted(DYNAMICS_MODES))
@pytest.mark.parametrize("t", TIMES)
def test_transport_matches_closed_form(id, t):
    n_max = DYNAMICS_MODES[id]
    closed, moved = example_morphism(id, t), transported_tau(id, t)
    assert max(max_abs_coeff(moved.image(n) - closed.image(n)) for n in range(1, n_max + 1)) < 1e-10


@pytest.mark.parametrize("id", sorted(DYNAMICS_MODES))
@pytest.mark.parametrize("t", TIMES)
def test_evolved_modes_anticommute(id, t):
    assert example_morphism(id, t).check_car(DYNAMICS_MODES[id], 1e-10).passed


@pytest.mark.parametrize("id", [1, 2, 3])
def test_rotations_are_orthogonal(id):
    u = rotation_matrix(id, 0.8)
    assert np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=1e-14)


@given(st.sampled_from([1, 2, 3]), times, st.sampled_from([1, 2]))
def test_overlap_is_minus_sine(id, t, m):
    assert abs(overlap(id, t, m=m) + math.sin(t)) < 1e-12


def test_zero_time_is_identity():
    for id in (1, 2, 3):
        assert abs(overlap(id, 0.0)) < 1e-15


@pytest.mark.parametrize("id", [1, 2, 3])
def test_particle_number_tables(id):
    for occ in table_cases(id):
        got = particle_number_expectation(id, 0.7, OccupationVector(frozenset(occ)))
        assert abs(got - particle_number_table(id, 0.7, occ)) < 1e-10, occ


@given(times, times, times, times)
def test_npoint_functions(t1, t2, t3, t4):
    for name, ops, trunc, want, _ in npoint_cases(t1, t2, t3, t4):
        assert abs(npoint(1, ops, truncate=trunc) - want) < 1e-10, name


def test_two_point_function_depends_on_time_difference():
    a = npoint(1, [(2, False, 0.3), (2, True, 1.1)])
    b = npoint(1, [(2, False, 1.3), (2, True, 2.1)])
    assert abs(a - b) < 1e-12


@pytest.mark.parametrize("id", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_generator(id, n):
    assert generator_check(id, n, TIMES[:3]) < 1e-6
