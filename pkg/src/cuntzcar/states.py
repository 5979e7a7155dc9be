"""Fock representations of the CAR algebra and the quasi-free states built from them.

Fock vectors are keyed by occupation bitmasks: bit ``n - 1`` is set when
mode ``n`` is occupied, and the mask ``M`` corresponds to the basis vector
``e_{M + 1}`` of the standard permutation representation of O_2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import adjoint
from .carpoly import CarPolynomial, Word, normal_order
from .morphisms import apply, phi_sigma
from .reps import Ket, PermRep
from .rfs import CheckReport, Rfs, standard_rfs, to_cuntz
from .scalars import conj, is_zero

__all__ = [
    "OccupationVector",
    "FockKet",
    "fock_vacuum",
    "fock_apply",
    "pi_s_apply",
    "phi_fock_vacuum_check",
    "label_bogoliubov",
    "chain_bogoliubov",
    "branch_bogoliubov",
    "branch_fock_check",
    "QuasiFockState",
    "omega_value",
    "kms_check",
    "tau_imaginary",
    "product_factorization_check",
    "car_monomials",
]


@dataclass(frozen=True)
class OccupationVector:
    """A finite set of occupied modes; ``index`` is ``N = 1 + sum 2^(n-1)``."""

    modes: FrozenSet[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "modes", frozenset(self.modes))
        if any(n < 1 for n in self.modes):
            raise ValueError("modes start at 1")

    @classmethod
    def of(cls, *modes: int) -> "OccupationVector":
        return cls(frozenset(modes))

    @classmethod
    def from_index(cls, N: int) -> "OccupationVector":
        if N < 1:
            raise ValueError("basis indices start at 1")
        mask = N - 1
        return cls(frozenset(n + 1 for n in range(mask.bit_length()) if mask >> n & 1))

    @property
    def mask(self) -> int:
        return sum(1 << (n - 1) for n in self.modes)

    @property
    def index(self) -> int:
        return 1 + self.mask

    def ket(self) -> "FockKet":
        """``a_{n_1}^* ... a_{n_k}^* e_1`` with ascending modes, which carries no sign."""
        return FockKet({self.mask: 1})


class FockKet(dict):
    """Finitely supported Fock vector ``{mask: amplitude}``."""

    def add(self, mask: int, c) -> None:
        v = self.get(mask, 0) + c
        if is_zero(v, 1e-300 if isinstance(v, (float, complex)) else 0.0):
            self.pop(mask, None)
        else:
            self[mask] = v

    def inner(self, other: "FockKet"):
        """``<self | other>``, antilinear in the first slot."""
        return sum((conj(c) * other.get(k, 0) for k, c in self.items()), 0)

    def norm2(self) -> float:
        return float(sum(abs(complex(c)) ** 2 for c in self.values()))

    def to_standard(self) -> Ket:
        """The same vector in the standard permutation representation."""
        return Ket({(0, mask + 1): c for mask, c in self.items()})

    @classmethod
    def from_standard(cls, ket: Ket) -> "FockKet":
        return cls({m - 1: c for (_, m), c in ket.items()})

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(is_zero(c, tol) for c in self.values())


def fock_vacuum() -> FockKet:
    return FockKet({0: 1})


def _apply_op(mode: int, dag: bool, mask: int) -> Optional[Tuple[int, int]]:
    bit = 1 << (mode - 1)
    if bool(mask & bit) == dag:
        return None
    sign = -1 if bin(mask & (bit - 1)).count("1") % 2 else 1
    return mask ^ bit, sign


def _apply_word(word: Word, mask: int) -> Optional[Tuple[int, int]]:
    sign = 1
    for mode, dag in reversed(word):
        hit = _apply_op(mode, dag, mask)
        if hit is None:
            return None
        mask, s = hit
        sign *= s
    return mask, sign


def fock_apply(x: CarPolynomial, v: FockKet) -> FockKet:
    """Fock action with Jordan-Wigner signs counting occupied lower modes."""
    out = FockKet()
    for mask, a in v.items():
        for word, c in x:
            hit = _apply_word(word, mask)
            if hit is not None:
                out.add(hit[0], a * c * hit[1])
    return out


_STANDARD = PermRep.standard(2)


def pi_s_apply(x: CarPolynomial, v: FockKet) -> FockKet:
    """``pi_s(Phi_SR1(x)) v`` computed in O_2; agrees with :func:`fock_apply`."""
    return FockKet.from_standard(_STANDARD.act_element(to_cuntz(x), v.to_standard()))


# vacua of restricted representations -------------------------------------------

Bogoliubov = Callable[[int], bool]


def label_bogoliubov(rep: PermRep, lam: int) -> Bogoliubov:
    """Modes exchanged with their adjoints for the vacuum ``e_{lam,1}`` of a cycle.

    With ``n = kappa (m - 1) + l`` the mode is exchanged when ``i_{lam + l - 1} = 2``.
    """

    def swapped(n: int) -> bool:
        l = (n - 1) % rep.kappa + 1
        return rep.letter(lam + l - 1) == 2

    return swapped


def chain_bogoliubov(rep: PermRep, lam: int) -> Bogoliubov:
    """For chains the mode ``n`` is exchanged when ``i_{lam + n - 1} = 2``."""
    return lambda n: rep.letter(lam + n - 1) == 2


def _bogoliubov_image(n: int, swapped: Bogoliubov) -> CarPolynomial:
    return CarPolynomial.adag(n) if swapped(n) else CarPolynomial.a(n)


def phi_fock_vacuum_check(
    rep: PermRep,
    vacua: Sequence[Tuple[Tuple[int, int], Bogoliubov]],
    n_max: int,
    rfs: Optional[Rfs] = None,
    sample_depth: int = 2,
) -> CheckReport:
    """Certify Fock vacua of a representation restricted to the CAR algebra.

    For each ``(v, swapped)`` checks ``pi(Phi(phi(a_n))) e_v = 0`` for
    ``n <= n_max``, where ``phi`` exchanges ``a_n`` and ``a_n^*`` on the
    modes flagged by ``swapped``.  Vectors created from different vacua by
    products of up to ``sample_depth`` creators are checked to be orthogonal.
    """
    rfs = rfs or standard_rfs(1)
    rep_name = str(rep)
    report = CheckReport(f"vacua[{rep_name}]")
    images = {}
    for n in range(1, n_max + 1):
        x = rfs.car_image(n)
        images[(n, False)] = x
        images[(n, True)] = adjoint(x)
    for v, swapped in vacua:
        ket = Ket.basis(*v)
        for n in range(1, n_max + 1):
            y = images[(n, swapped(n))]
            out = rep.act_element(y, ket)
            report.record(not out, f"a{n} on e{v}")
    sectors = []
    for v, swapped in vacua:
        vecs = []
        for k in range(1, sample_depth + 1):
            for modes in itertools.combinations(range(1, min(n_max, 4) + 1), k):
                ket = Ket.basis(*v)
                for n in reversed(modes):
                    ket = rep.act_element(images[(n, not swapped(n))], ket)
                vecs.append(ket)
        sectors.append(vecs)
    for a, b in itertools.combinations(range(len(vacua)), 2):
        for x in sectors[a]:
            for y in sectors[b]:
                report.record(is_zero(x.inner(y), 1e-12), f"sectors {vacua[a][0]} and {vacua[b][0]}")
    return report


def branch_bogoliubov(p: int, i0: int) -> Bogoliubov:
    """``phi_{i0}``: mode ``p(m-1)+j`` is exchanged when the digit ``j`` of ``i0`` is 2."""
    bits = i0 - 1
    return lambda n: bool(bits >> ((n - 1) % p) & 1)


def branch_fock_check(p: int, n_max: int, wrong: bool = False) -> CheckReport:
    """Check ``(pi_s o phi_sigma_p o Phi_SR1)(phi_{i0}(a_n)) e_{i0} = 0`` for every ``i0``.

    With ``wrong`` the Bogoliubov maps are complemented, a negative control
    that must report failures.
    """
    if not 1 <= p <= 4:
        raise ValueError("p must be between 1 and 4")
    report = CheckReport(f"branch[{p}]" + ("-control" if wrong else ""))
    m = phi_sigma(p)
    sr1 = standard_rfs(1)
    img = {}
    for n in range(1, n_max + 1):
        y = apply(m, sr1.car_image(n))
        img[(n, False)] = y
        img[(n, True)] = adjoint(y)
    for i0 in range(1, 2**p + 1):
        swapped = branch_bogoliubov(p, i0)
        ket = Ket.basis(0, i0)
        for n in range(1, n_max + 1):
            flag = swapped(n) != wrong
            out = _STANDARD.act_element(img[(n, flag)], ket)
            report.record(not out, f"i0={i0} a{n}")
    return report


# quasi-free states ---------------------------------------------------------------


@dataclass
class QuasiFockState:
    """Quasi-free state with ``omega(a_n^* a_n) = lambda_j`` for ``n = p(m-1)+j``.

    Calling the state evaluates the product state ``prod_n diag(1 - lambda_n,
    lambda_n)``.  The weights ``Lambda_{i0} = prod_j Lambda_{j, i0_j}`` with
    ``Lambda_{j,1} = 1 - lambda_j`` and ``Lambda_{j,2} = lambda_j`` drive the
    branch convex sum ``mixture``, which agrees with the product state on
    words supported in a single block of ``p`` modes.

    Parameters
    ----------
    lambdas : sequence of float
        ``lambda_1, ..., lambda_p`` in ``[0, 1]``.
    """

    lambdas: Tuple[float, ...]
    _cache: Dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.lambdas = tuple(self.lambdas)
        if not self.lambdas:
            raise ValueError("at least one lambda is needed")
        if any(not 0 <= lam <= 1 for lam in self.lambdas):
            raise ValueError("lambdas must lie in [0, 1]")

    @classmethod
    def from_beta(cls, beta: float, eps: Sequence[float]) -> "QuasiFockState":
        """Gibbs parameters ``lambda_j = 1 / (1 + exp(beta eps_j))``."""
        return cls(tuple(1.0 / (1.0 + math.exp(beta * e)) for e in eps))

    @property
    def p(self) -> int:
        return len(self.lambdas)

    def weights(self) -> Dict[int, float]:
        """``{i0: Lambda_{i0}}``; the weights are nonnegative and sum to one."""
        out = {}
        for i0 in range(1, 2**self.p + 1):
            w = 1
            for j, lam in enumerate(self.lambdas):
                w = w * (lam if (i0 - 1) >> j & 1 else 1 - lam)
            out[i0] = w
        return out

    def lam(self, n: int):
        return self.lambdas[(n - 1) % self.p]

    def _word_value(self, word: Word):
        hit = self._cache.get(word)
        if hit is not None:
            return hit
        modes = sorted({m for m, _ in word})
        total = 0
        for occupied in itertools.product((False, True), repeat=len(modes)):
            weight = 1
            mask = 0
            for m, occ in zip(modes, occupied):
                weight = weight * (self.lam(m) if occ else 1 - self.lam(m))
                mask |= occ << (m - 1)
            if weight == 0:
                continue
            hit = _apply_word(word, mask)
            if hit is not None and hit[0] == mask:
                total = total + weight * hit[1]
        self._cache[word] = total
        return total

    def __call__(self, x: CarPolynomial):
        """``tr(rho x)`` with ``rho`` the product of ``diag(1 - lambda_n, lambda_n)`` over modes."""
        return sum((c * self._word_value(word) for word, c in x), 0)

    def mixture(self, x: CarPolynomial):
        """The convex sum ``sum_{i0} Lambda_{i0} omega_{i0}(x)`` of branch Fock states.

        ``omega_{i0}`` is the Fock vacuum state after the Bogoliubov map
        ``phi_{i0}``, which exchanges every mode ``p(m-1)+j`` with the same
        ``j`` at once.  It coincides with the product state on words whose
        modes lie in one block of ``p`` consecutive modes, and differs from
        it when a word meets two modes with the same ``j``.
        """
        total = 0
        for word, c in x:
            for i0, w in self.weights().items():
                if w == 0:
                    continue
                swapped = branch_bogoliubov(self.p, i0)
                raw = tuple((mode, dag != swapped(mode)) for mode, dag in word)
                for key, v in normal_order(raw):
                    if not key:
                        total = total + c * w * v
        return total

    def product_formula(self, x: CarPolynomial):
        """Independent evaluation as the product state ``prod_n diag(1 - lambda, lambda)``.

        A normal-ordered word has a nonzero value only when it is
        ``a_{n_1}^* ... a_{n_k}^* a_{n_1} ... a_{n_k}``, which equals
        ``(-1)^(k(k-1)/2) n_{n_1} ... n_{n_k}``.
        """
        total = 0
        for word, c in x:
            k = len(word) // 2
            creators = [m for m, d in word if d]
            annihilators = [m for m, d in word if not d]
            if len(creators) != k or creators != annihilators:
                continue
            v = -1 if (k * (k - 1) // 2) % 2 else 1
            for m in creators:
                v = v * self.lam(m)
            total = total + c * v
        return total

    def via_branch(self, x: CarPolynomial):
        """``<Omega | pi(x) Omega>`` with ``pi = Fock o phi_sigma_p`` and ``Omega = sum sqrt(Lambda) e_{i0}``."""
        from .induced import closed_form_morphism

        phi = closed_form_morphism(f"phi_sigma({self.p})")
        omega = FockKet()
        for i0, w in self.weights().items():
            if w:
                omega.add(i0 - 1, math.sqrt(w))
        return omega.inner(fock_apply(phi.apply_to(x), omega))


def omega_value(state: QuasiFockState, x: CarPolynomial):
    """Value of the quasi-free product state; see ``QuasiFockState.mixture`` for the branch convex sum."""
    return state(x)


def tau_imaginary(y: CarPolynomial, beta: float, eps: Sequence[float]) -> CarPolynomial:
    """``tau_{i beta}(y)`` for ``tau_t(a_n) = exp(-i eps_j t) a_n``: ``a_n -> e^{beta eps_j} a_n``."""
    p = len(eps)
    out = {}
    for word, c in y:
        exponent = sum((-1 if dag else 1) * eps[(m - 1) % p] for m, dag in word)
        out[word] = c * math.exp(beta * exponent)
    return CarPolynomial(out, y.tol)


def kms_check(beta: float, eps: Sequence[float], X: CarPolynomial, Y: CarPolynomial, state=None) -> float:
    """``|omega(X tau_{i beta}(Y)) - omega(Y X)|`` for the Gibbs parameters of ``(beta, eps)``."""
    state = state or QuasiFockState.from_beta(beta, eps)
    lhs = state(X * tau_imaginary(Y, beta, eps))
    rhs = state(Y * X)
    return abs(complex(lhs) - complex(rhs))


def car_monomials(modes: int) -> List[CarPolynomial]:
    """All ``4^modes`` normal-ordered words in modes ``1..modes``, one choice per mode."""
    out = []
    for choice in itertools.product(range(4), repeat=modes):
        ops = []
        for m, k in enumerate(choice, start=1):
            ops += {0: [], 1: [(m, False)], 2: [(m, True)], 3: [(m, True), (m, False)]}[k]
        out.append(CarPolynomial.from_ops(ops))
    return out


def _random_monomial(rng: np.random.Generator, modes: Sequence[int], length: int) -> CarPolynomial:
    ops = [(int(rng.choice(modes)), bool(rng.integers(2))) for _ in range(length)]
    return CarPolynomial.from_ops(ops)


def factor_partition(state: QuasiFockState) -> Tuple[List[int], List[int], List[int]]:
    """``J_1`` (lambda in {0, 1}), ``J_2`` (lambda = 1/2) and ``J_3`` (the rest), as block positions ``j``."""
    J1 = [j for j, lam in enumerate(state.lambdas, 1) if lam in (0, 1)]
    J2 = [j for j, lam in enumerate(state.lambdas, 1) if lam == 0.5]
    J3 = [j for j, lam in enumerate(state.lambdas, 1) if j not in J1 and j not in J2]
    return J1, J2, J3


def product_factorization_check(
    state: QuasiFockState, samples: int = 50, blocks: int = 2, max_len: int = 4, seed: int = 0
) -> float:
    """Largest ``|omega(X_1 X_2 X_3) - prod omega(X_k)|`` over sampled triples.

    ``X_k`` is a random monomial in the modes ``p(m-1)+j`` with ``j in J_k``
    and ``m <= blocks``; parts with an empty ``J_k`` are the identity.
    """
    rng = np.random.default_rng(seed)
    parts = factor_partition(state)
    worst = 0.0
    for _ in range(samples):
        xs = []
        for J in parts:
            modes = [state.p * (m - 1) + j for m in range(1, blocks + 1) for j in J]
            if not modes:
                xs.append(CarPolynomial.identity())
                continue
            length = int(rng.integers(0, max_len + 1))
            xs.append(_random_monomial(rng, modes, length))
        lhs = complex(state(xs[0] * xs[1] * xs[2]))
        rhs = complex(state(xs[0]) * state(xs[1]) * state(xs[2]))
        worst = max(worst, abs(lhs - rhs))
    return worst
