"""Permutation representations, eigenvectors and branching numbers."""

import pytest
import sympy
from hypothesis import given, strategies as st

from cuntzcar.algebra import Element
from cuntzcar.morphisms import label_to_standard_endomorphism, phi_sigma
from cuntzcar.reps import (
    Ket,
    PermRep,
    branch_index,
    branching_number,
    certify_branch_label,
    enumerate_branch_labels,
    find_cycle_eigenvectors,
    label_canonical,
    label_period,
    necklace_count,
    necklace_count_closed,
    parse_rep,
    restriction_reduction_check,
    standard_index,
    tail_equivalent,
)


def test_standard_representation_action():
    rep = PermRep.standard(2)
    for m in range(1, 6):
        for i in (1, 2):
            assert rep.act_generator(i, (0, m)) == Ket.basis(0, 2 * (m - 1) + i)
    assert rep.act_generator_adjoint(1, (0, 2)) == Ket()
    assert rep.act_generator_adjoint(2, (0, 2)) == Ket.basis(0, 1)


@given(st.integers(1, 40), st.lists(st.integers(1, 2), max_size=4).map(tuple), st.lists(st.integers(1, 2), max_size=4).map(tuple))
def test_standard_rep_is_a_representation(m, I, J):
    rep = PermRep.standard(2)
    x, y = Element.mono(2, I, ()), Element.mono(2, (), J)
    v = Ket.basis(0, m)
    assert rep.act_element(x * y, v) == rep.act_element(x, rep.act_element(y, v))


@given(st.integers(1, 30), st.sampled_from([(1, 2), (1, 1, 2), (2,), (1, 2, 2)]))
def test_cuntz_relations_hold_in_cycle_reps(n, label):
    rep = PermRep.cycle(label)
    v = rep.vector(n)
    e = Ket.basis(*v)
    total = Ket()
    for i in (1, 2):
        out = rep.act_element(Element.mono(2, (i,), (i,)), e)
        for k, c in out.items():
            total.add(k, c)
        assert rep.act_element(Element.mono(2, (), (i,)) * Element.gen(2, i), e) == e
    assert total == e


def test_standard_index_formula():
    assert standard_index((1, 2), 1) == 3
    assert standard_index((2,), 3) == 6


def test_cycle_eigenvalue_uses_principal_root():
    rep = PermRep.cycle((1, 2), z=-1)
    assert abs(rep.root() - 1j) < 1e-15
    out = rep.act_element(Element.word(2, (1, 2)), Ket.basis(0, 1))
    assert abs(out[(0, 1)] + 1) < 1e-12


def test_eigenvectors_of_rep12():
    report = find_cycle_eigenvectors(PermRep.cycle((1, 2)), None, 2, 8)
    assert report.hits == [((1, 2), (0, 1)), ((2, 1), (1, 1))]


def test_label_endomorphism_turns_rep12_into_standard_signature():
    m = label_to_standard_endomorphism((1, 2))
    report = find_cycle_eigenvectors(PermRep.cycle((1, 2)), m, max_len=2, search_depth=16)
    assert report.vectors == [(0, 1)]


def test_phi_sigma_2_on_standard_rep_has_four_eigen_relations():
    report = find_cycle_eigenvectors(PermRep.standard(2), phi_sigma(2), max_len=2, search_depth=8)
    assert sorted(report.hits) == sorted([((1,), (0, 1)), ((2,), (0, 4)), ((1, 2), (0, 3)), ((2, 1), (0, 2))])


def test_label_helpers():
    assert label_canonical((2, 1, 1)) == (1, 1, 2)
    assert label_period((1, 2, 1, 2)) == 2
    assert tail_equivalent(((2,), (1,)), ((1, 2), (1,)))
    assert not tail_equivalent(((2,), (1,)), ((), (2,)))


@pytest.mark.parametrize("n", range(1, 17))
def test_necklace_recurrence_matches_closed_form(n):
    assert necklace_count(n) == necklace_count_closed(n)


def test_necklace_values():
    assert necklace_count(7) == 18 == (2**7 - 2) // 7
    assert [necklace_count(n) for n in range(1, 7)] == [2, 1, 2, 3, 6, 9]


@pytest.mark.parametrize("p,B", [(1, 2), (2, 3), (3, 4), (4, 6)])
def test_branching_numbers(p, B):
    assert branching_number(p) == B
    assert len(enumerate_branch_labels(p)) == B


@given(st.integers(1, 8))
def test_branching_number_counts_labels(p):
    labels = enumerate_branch_labels(p)
    assert len(labels) == branching_number(p)
    assert sum(len(L) for L in labels) == 2**p
    assert all(p % len(L) == 0 for L in labels)


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_branch_labels_certified_at_their_index(p):
    seen = []
    for L in enumerate_branch_labels(p):
        for lam in range(len(L)):
            N, ok = certify_branch_label(L, lam, p)
            assert ok, (L, lam, N)
            seen.append(N)
    assert sorted(seen) == list(range(1, 2**p + 1))


def test_branch_index_p4_display():
    assert [branch_index((1, 2), lam, 4) for lam in range(2)] == [11, 6]
    assert branch_index((2,), 0, 4) == 16
    with pytest.raises(ValueError):
        branch_index((1, 1, 2), 0, 4)


@pytest.mark.parametrize("i0,q", [(1, 2), (2, 2), (1, 3), (2, 3)])
def test_restriction_reduction(i0, q):
    assert restriction_reduction_check(i0, q, n_max=6).passed


def test_parse_rep():
    assert parse_rep("Rep(1)") == PermRep.standard(2)
    assert parse_rep("Rep(1,2;z=1)") == PermRep.cycle((1, 2))
    assert parse_rep("Rep(2|1)") == PermRep.chain((2,), (1,))
    assert parse_rep("Rep(1,2;z=-1)").z == -1
    with pytest.raises(ValueError):
        parse_rep("Rep 1,2")


def test_bad_label_letters():
    with pytest.raises(ValueError):
        PermRep.cycle((1, 3))


def test_moebius_closed_form_uses_sympy():
    n = 12
    assert necklace_count_closed(n) == sum(sympy.mobius(n // k) * 2**k for k in sympy.divisors(n)) // n
