"""One-parameter groups of CAR automorphisms induced by rotations in O_{2^p}.

Three examples rotate pairs of generators by ``theta_t = mu t``:

* ``1``: O_4, the pair ``(s_3, s_4)``;
* ``2``: O_8, the pair ``(s_5, s_8)``;
* ``3``: O_16, the pairs ``(s_2, s_15)``, ``(s_3, s_14)``, ``(s_5, s_12)``, ``(s_9, s_8)``.

For each, :func:`example_tau` gives the closed-form image of ``a_n`` and
:func:`transported_tau` recomputes it through the recursive fermion system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Tuple

import numpy as np

from .algebra import Element
from .carpoly import CarPolynomial, K_product, car_commutator, max_abs_coeff
from .induced import CarMorphism, induced_automorphism
from .states import OccupationVector, fock_apply, fock_vacuum

__all__ = [
    "EvolutionExample",
    "EXAMPLES",
    "rotation_matrix",
    "example_unitary",
    "example_tau",
    "example_morphism",
    "transported_tau",
    "particle_number_expectation",
    "particle_number_table",
    "npoint",
    "hamiltonian_block",
    "generator_check",
    "overlap",
    "transition_modes",
]

# Coefficients below this size are dropped from float polynomials.
TOL = 1e-13


@dataclass(frozen=True)
class EvolutionExample:
    """A rotation example: block size ``p`` and the rotated generator pairs ``(a, b)``.

    ``alpha_t(s_a) = cos s_a - sin s_b`` and ``alpha_t(s_b) = sin s_a + cos s_b``.
    """

    id: int
    p: int
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def d(self) -> int:
        return 2**self.p

    def block(self, n: int) -> int:
        return (n - 1) // self.p + 1

    def block_modes(self, m: int) -> List[int]:
        return list(range(self.p * (m - 1) + 1, self.p * m + 1))


EXAMPLES: Dict[int, EvolutionExample] = {
    1: EvolutionExample(1, 2, ((3, 4),)),
    2: EvolutionExample(2, 3, ((5, 8),)),
    3: EvolutionExample(3, 4, ((2, 15), (3, 14), (5, 12), (9, 8))),
}


def _example(id: int) -> EvolutionExample:
    try:
        return EXAMPLES[id]
    except KeyError:
        raise ValueError(f"unknown example {id}; choose 1, 2 or 3") from None


def rotation_matrix(id: int, t: float, mu: float = 1.0) -> np.ndarray:
    """``u`` with ``alpha_t(s_i) = sum_k s_k u[k, i]``."""
    ex = _example(id)
    theta = mu * t
    c, s = math.cos(theta), math.sin(theta)
    u = np.eye(ex.d)
    for a, b in ex.pairs:
        a, b = a - 1, b - 1
        u[a, a], u[b, a] = c, -s
        u[a, b], u[b, b] = s, c
    return u


def example_unitary(id: int, t: float, mu: float = 1.0) -> Element:
    """``u_t = sum_i alpha_t(s_i) s_i^*`` in O_{2^p}."""
    u = rotation_matrix(id, t, mu)
    d = u.shape[0]
    terms = {}
    for i in range(d):
        for k in range(d):
            if u[k, i] != 0:
                terms[((k + 1,), (i + 1,))] = float(u[k, i])
    return Element(d, terms, TOL)


def _float(x: CarPolynomial) -> CarPolynomial:
    return CarPolynomial(dict(x.terms), TOL)


_A, _AD, _N, _K = CarPolynomial.a, CarPolynomial.adag, CarPolynomial.number, CarPolynomial.K


def _one(c=1.0) -> CarPolynomial:
    return CarPolynomial.identity(c)


def _W(n: int) -> CarPolynomial:
    return K_product(range(1, n + 1))


def _F(k: int, c: float, s: float) -> CarPolynomial:
    inner = _one(s) - (_W(2 * (k - 1)) * (_A(2 * k - 1) - _AD(2 * k - 1))).scale(c)
    return _one() - (inner * _N(2 * k)).scale(2 * s)


def _G(n: int, c: float, s: float) -> CarPolynomial:
    out = _one()
    for k in range(1, n + 1):
        out = out * _F(k, c, s)
    return out


def _tau1(n: int, c: float, s: float) -> CarPolynomial:
    m = (n + 1) // 2
    G = _G(m - 1, c, s)
    if n % 2:
        a = _A(n)
        inner = (a + _AD(n)).scale(s) - _W(n).scale(c)
        return G * (a - (inner * _N(n + 1)).scale(s))
    return G * (_A(n).scale(c) + (_W(n - 2) * (_A(n - 1) - _AD(n - 1)) * _A(n)).scale(s))


def _tau2(n: int, c: float, s: float) -> CarPolynomial:
    m = (n + 2) // 3
    i, j, k = 3 * m - 2, 3 * m - 1, 3 * m
    nk = _N(k)
    if n == i:
        return _A(i) + ((_A(i).scale(c - 1) + _AD(j).scale(s)) * nk)
    if n == j:
        return _A(j) + ((_AD(i).scale(-s) + _A(j).scale(c - 1)) * nk)
    diff = _N(i) - _N(j)
    bracket = _one(c) + (diff * diff).scale(1 - c) + (_A(i) * _A(j) + _AD(i) * _AD(j)).scale(s)
    return bracket * _A(k)


def _b3(n: int) -> CarPolynomial:
    """``b_{m, j_1}`` for ``n = 4(m-1) + j_1``, built on the cyclic order ``j_1 .. j_4``."""
    m, j1 = (n - 1) // 4 + 1, (n - 1) % 4 + 1
    j2, j3, j4 = (4 * (m - 1) + (j1 + r - 1) % 4 + 1 for r in (1, 2, 3))
    return (
        _A(j2) * _A(j3) * _A(j4)
        + _AD(j2) * _AD(j3) * _A(j4)
        + _AD(j3) * _AD(j4) * _A(j2)
        - _AD(j4) * _AD(j2) * _A(j3)
    )


def _tau3(n: int, c: float, s: float) -> CarPolynomial:
    return _A(n).scale(c) + _b3(n).scale(s)


_CLOSED = {1: _tau1, 2: _tau2, 3: _tau3}


def example_tau(id: int, t: float, n: int, mu: float = 1.0) -> CarPolynomial:
    """Closed-form ``tau_t(a_n)`` of an example."""
    _example(id)
    if n < 1:
        raise ValueError("modes start at 1")
    theta = mu * t
    return _float(_CLOSED[id](n, math.cos(theta), math.sin(theta)))


def example_morphism(id: int, t: float, mu: float = 1.0) -> CarMorphism:
    return CarMorphism(lambda n: example_tau(id, t, n, mu), f"tau[{id}]({t})")


def transported_tau(id: int, t: float, mu: float = 1.0) -> CarMorphism:
    """``tau_t`` recomputed as ``Phi_SR_p^{-1} o alpha_t o Phi_SR_p``."""
    return induced_automorphism(rotation_matrix(id, t, mu), f"transport[{id}]({t})")


def transition_modes(id: int, m: int = 1) -> Tuple[int, List[int]]:
    """Mode ``n`` and the modes of the many-particle vector that ``tau_t(a_n^*) e_1`` mixes with.

    Example 1 pairs ``a_{2m}`` with ``a_{2m-1}^* a_{2m}^*``, example 2 pairs
    ``a_{3m}`` with the whole block and example 3 pairs ``a_{4m}`` with the
    three other modes of its block.
    """
    ex = _example(id)
    modes = ex.block_modes(m)
    n = modes[-1]
    return (n, modes[:-1]) if id == 3 else (n, modes)


def overlap(id: int, t: float, mu: float = 1.0, m: int = 1, t0: float = 0.0) -> complex:
    """``<tau_t(a_n^*) e_1 | tau_{t0}(a_{k_1}^* ... a_{k_r}^*) e_1>`` for :func:`transition_modes`."""
    n, target = transition_modes(id, m)
    left = fock_apply(example_tau(id, t, n, mu).star, fock_vacuum())
    right = fock_vacuum()
    for k in reversed(target):
        right = fock_apply(example_tau(id, t0, k, mu).star, right)
    return complex(left.inner(right))


# particle numbers -----------------------------------------------------------


def _assert_truncation(x: CarPolynomial, block: Sequence[int]) -> None:
    block = set(block)
    for word, _ in x:
        if not any(not dag and mode in block for mode, dag in word):
            raise AssertionError("a term of tau_t(a_n^* a_n) has no annihilator in the block of n")


def particle_number_expectation(id: int, t: float, occ: OccupationVector, mu: float = 1.0) -> float:
    """``<v | N_t v>`` for ``v = a_{n_1}^* ... a_{n_k}^* e_1``.

    ``N_t = sum_n tau_t(a_n^* a_n)``.  Every term of ``tau_t(a_n^* a_n)`` ends
    with an annihilator in the block of ``n`` (asserted here), so blocks
    not meeting ``occ`` contribute nothing and the sum is finite.
    """
    ex = _example(id)
    v = occ.ket()
    blocks = sorted({ex.block(n) for n in occ.modes})
    total = 0.0
    for m in blocks:
        for n in ex.block_modes(m):
            x = example_tau(id, t, n, mu)
            num = _float(x.star * x)
            _assert_truncation(num, ex.block_modes(m))
            total += complex(v.inner(fock_apply(num, v))).real
    return total


def particle_number_table(id: int, theta: float, modes: Sequence[int], literal: bool = False) -> float:
    """Closed-form ``omega(N_t; v)`` for ``v`` creating ``modes``.

    For example 1 the value is a sum over the occupied blocks: ``1`` for an
    odd mode alone, ``1 + sin^2`` for an even mode alone and ``2 - sin^2``
    for both.  The literal reference table instead carries a factor
    ``prod (1 + sin^2(2 theta) n_{2k})`` in ``tau_t(a_{2m}^* a_{2m})`` that is
    incompatible with the closed form of ``tau_t`` (its ``G`` factors are
    unitary); ``literal=True`` returns those entries.

    For example 2 a block with occupied set ``S`` contributes ``|S|`` plus
    ``2 sin^2 (1 - |S & {3m-2, 3m-1}|)`` when ``3m`` is in ``S``.  The literal
    reference table adds single-particle values for two particles; that rule
    fails when ``3m`` shares its block with exactly one partner, and
    ``literal=True`` returns it.
    """
    s2 = math.sin(theta) ** 2
    s22 = math.sin(2 * theta) ** 2
    ex = _example(id)
    modes = sorted(modes)
    k = len(modes)
    if id == 1 and not literal:
        total = 0.0
        for b in {ex.block(n) for n in modes}:
            odd = 2 * b - 1 in modes
            even = 2 * b in modes
            total += (2 - s2) if odd and even else (1.0 if odd else 1 + s2)
        return total
    if id == 1:
        odd = [n % 2 == 1 for n in modes]
        if all(odd):
            return float(k)
        if not any(odd):
            return ((1 + s22) ** k - 1) / s22 * (1 + s2) if s22 else k * (1 + s2)
        if k == 1:
            return 1 + s2
        if k == 2:
            n1, n2 = modes
            if n1 % 2 and n2 == n1 + 1:
                return 2 - s2
            if n1 % 2:
                return 2 + s2
            return 2 + s2 + s22
        raise ValueError("example 1 tabulates mixed parities only for k <= 2")
    if id == 2 and not literal:
        total = 0.0
        for b in {ex.block(n) for n in modes}:
            partners = sum(1 for n in (3 * b - 2, 3 * b - 1) if n in modes)
            total += partners
            if 3 * b in modes:
                total += 1 + 2 * s2 * (1 - partners)
        return total
    if id == 2:
        single = lambda n: 1 + 2 * s2 if n % 3 == 0 else 1.0
        if k == 3 and ex.block(modes[0]) == ex.block(modes[2]):
            return 3 - 2 * s2
        if k > 3 and any(
            sum(1 for n in modes if ex.block(n) == b) == 3 for b in {ex.block(n) for n in modes}
        ):
            raise ValueError("example 2 tabulates full blocks only for k = 3")
        return sum(single(n) for n in modes)
    ms = [ex.block(n) for n in modes]
    d = lambda a, b: 1 if ms[a] == ms[b] else 0
    if k == 1:
        return 1 + 2 * s2
    if k == 2:
        return 2 + 4 * (1 - d(0, 1)) * s2
    if k == 3:
        return 3 + (6 + 4 * (d(0, 1) * d(1, 2) - d(0, 1) - d(1, 2) - d(2, 0))) * s2
    if k == 4:
        c = (
            2
            + d(0, 1) * d(1, 2)
            + d(1, 2) * d(2, 3)
            + d(2, 3) * d(3, 0)
            + d(3, 0) * d(0, 1)
            - d(0, 1)
            - d(0, 2)
            - d(0, 3)
            - d(1, 2)
            - d(1, 3)
            - d(2, 3)
        )
        return 4 + 4 * c * s2
    raise ValueError("example 3 tabulates k <= 4")


# n-point functions -------------------------------------------------------------

Op = Tuple[int, bool, float]


def _raw_npoint(id: int, ops: Sequence[Op], mu: float) -> complex:
    v = fock_vacuum()
    for mode, dag, t in reversed(ops):
        x = example_tau(id, t, mode, mu)
        v = fock_apply(x.star if dag else x, v)
    return complex(v.get(0, 0))


def _set_partitions(items: List[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def _perm_sign(order: Sequence[int]) -> int:
    sign = 1
    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            if order[a] > order[b]:
                sign = -sign
    return sign


def npoint(id: int, ops: Sequence[Op], truncate: bool = False, mu: float = 1.0) -> complex:
    """Vacuum expectation of ``prod_k tau_{t_k}(a_{m_k}^#)``; ``ops`` holds ``(mode, dagger, t)``.

    The truncated function subtracts, for every proper set partition, the
    product of truncated functions of its blocks with the fermionic sign of
    the permutation that lists the blocks one after another.
    """
    ops = list(ops)
    memo: Dict[Tuple[int, ...], complex] = {}

    def full(idx: Tuple[int, ...]) -> complex:
        return _raw_npoint(id, [ops[i] for i in idx], mu)

    def trunc(idx: Tuple[int, ...]) -> complex:
        if idx in memo:
            return memo[idx]
        value = full(idx)
        for part in _set_partitions(list(idx)):
            if len(part) == 1:
                continue
            blocks = sorted((sorted(b) for b in part), key=lambda b: b[0])
            order = [i for b in blocks for i in b]
            prod = _perm_sign([idx.index(i) for i in order])
            for b in blocks:
                prod *= trunc(tuple(b))
                if prod == 0:
                    break
            value -= prod
        memo[idx] = value
        return value

    idx = tuple(range(len(ops)))
    return trunc(idx) if truncate else full(idx)


# generators ---------------------------------------------------------------------


def hamiltonian_block(id: int, m: int, mu: float = 1.0) -> CarPolynomial:
    """The block ``m`` part of the Hamiltonian generating examples 2 and 3."""
    if id == 2:
        i, j, k = 3 * m - 2, 3 * m - 1, 3 * m
        h = (_AD(i) * _AD(j) - _A(j) * _A(i)) * _N(k)
    elif id == 3:
        h = CarPolynomial()
        base = 4 * (m - 1)
        for j1 in range(1, 5):
            j = [base + (j1 + r - 1) % 4 + 1 for r in range(4)]
            h = h + _AD(j[0]) * _AD(j[1]) * _AD(j[2]) * _A(j[3]) - _AD(j[3]) * _A(j[2]) * _A(j[1]) * _A(j[0])
    else:
        raise ValueError("Hamiltonians are available for examples 2 and 3")
    return _float(h.scale(1j * mu))


def generator_check(id: int, n: int, t_samples: Iterable[float], mu: float = 1.0, step: float = 1e-4) -> float:
    """Largest coefficient of ``d/dt tau_t(a_n) - i [H, tau_t(a_n)]`` over ``t_samples``.

    The derivative is a central finite difference with the given step.
    """
    ex = _example(id)
    H = hamiltonian_block(id, ex.block(n), mu)
    worst = 0.0
    for t in t_samples:
        plus = example_tau(id, t + step, n, mu)
        minus = example_tau(id, t - step, n, mu)
        deriv = (plus - minus).scale(1 / (2 * step))
        rhs = car_commutator(H, example_tau(id, t, n, mu)).scale(1j)
        worst = max(worst, max_abs_coeff(deriv - rhs))
    return worst
