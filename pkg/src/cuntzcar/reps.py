"""Permutation representations of O_d on a countable orthonormal basis.

Three kinds are supported:

* ``cycle``: ``Rep(i_0, ..., i_{k-1}; z)`` with basis ``e_{lam, m}``,
  ``lam`` in ``Z_k`` and ``m >= 1``;
* ``chain``: ``Rep({i_k})`` for an eventually periodic sequence given as
  ``prefix | cycle``, with ``lam`` an integer;
* ``standard``: ``Rep(1)``, written ``pi_s``, with basis ``e_n = e_{0, n}``.

Vectors are :class:`Ket` objects, finitely supported amplitude maps.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import sympy

from .algebra import Element, Word
from .morphisms import Morphism, digits, homogeneous_embedding, is_periodic, phi_sigma
from .scalars import coerce, conj, is_zero

Basis = Tuple[int, int]
INDEX_CAP = 2**63 - 1


class Ket(dict):
    """Finitely supported vector ``{(lam, m): amplitude}`` with no zero entries."""

    @classmethod
    def basis(cls, lam: int, m: int, c=1) -> "Ket":
        return cls({(lam, m): c})

    def add(self, key: Basis, c) -> None:
        v = self.get(key, 0) + c
        if is_zero(v):
            self.pop(key, None)
        else:
            self[key] = v

    def __add__(self, other: "Ket") -> "Ket":
        out = Ket(self)
        for k, c in other.items():
            out.add(k, c)
        return out

    def scale(self, c) -> "Ket":
        out = Ket()
        for k, v in self.items():
            out.add(k, c * v)
        return out

    def inner(self, other: "Ket"):
        """``<self | other>``, antilinear in the first slot."""
        return sum((conj(c) * other.get(k, 0) for k, c in self.items()), 0)

    def close_to(self, other: "Ket", tol: float = 0.0) -> bool:
        keys = set(self) | set(other)
        return all(is_zero(self.get(k, 0) - other.get(k, 0), tol) for k in keys)


def _check_index(m: int) -> int:
    if m > INDEX_CAP:
        raise OverflowError(f"basis index {m} exceeds 2^63 - 1")
    return m


@dataclass(frozen=True)
class PermRep:
    """A permutation representation of O_d.

    Parameters
    ----------
    kind : {"cycle", "chain", "standard"}
    d : int
    label : tuple of int
        Cycle label ``(i_0, ..., i_{k-1})``; for chains the repeating block.
    z : scalar
        Cycle eigenvalue, unit modulus.
    prefix : tuple of int
        Chain prefix ``(i_0, ..., i_{N-1})`` before the repeating block.
    decoration : callable, optional
        Extra phases ``z_{i, (lam, m)}`` multiplying ``pi(s_i) e_{lam, m}``.
    """

    kind: str
    d: int = 2
    label: Tuple[int, ...] = (1,)
    z: object = 1
    prefix: Tuple[int, ...] = ()
    decoration: Optional[Callable[[int, Basis], object]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("cycle", "chain", "standard"):
            raise ValueError(f"unknown representation kind {self.kind!r}")
        if any(not 1 <= x <= self.d for x in self.label + self.prefix):
            raise ValueError("label letters outside 1..d")
        if not self.label:
            raise ValueError("empty label")

    # construction helpers ----------------------------------------------
    @classmethod
    def standard(cls, d: int = 2) -> "PermRep":
        return cls("standard", d, (1,))

    @classmethod
    def cycle(cls, label: Sequence[int], z=1, d: int = 2) -> "PermRep":
        return cls("cycle", d, tuple(label), z)

    @classmethod
    def chain(cls, prefix: Sequence[int], block: Sequence[int], d: int = 2) -> "PermRep":
        return cls("chain", d, tuple(block), 1, tuple(prefix))

    @property
    def kappa(self) -> int:
        return len(self.label)

    def __str__(self):
        if self.kind == "standard":
            return "Rep(1)"
        if self.kind == "cycle":
            return f"Rep({','.join(map(str, self.label))};z={self.z})"
        return f"Rep({','.join(map(str, self.prefix))}|{','.join(map(str, self.label))})"

    # label bookkeeping -------------------------------------------------
    def letter(self, k: int) -> int:
        """``i_k`` of the defining sequence."""
        if self.kind == "standard":
            return 1
        if self.kind == "cycle":
            return self.label[k % self.kappa]
        if k < 0:
            return 1
        if k < len(self.prefix):
            return self.prefix[k]
        return self.label[(k - len(self.prefix)) % self.kappa]

    def _lam(self, lam: int) -> int:
        if self.kind == "cycle":
            return lam % self.kappa
        if self.kind == "standard":
            return 0
        return lam

    def root(self):
        """Principal ``k``-th root of ``z``."""
        if self.kind != "cycle" or self.z == 1:
            return 1
        return cmath.exp(cmath.log(complex(self.z)) / self.kappa)

    def index(self, v: Basis) -> int:
        """Single index ``k(m-1) + lam + 1`` of a cycle vector (``m`` for the standard rep)."""
        lam, m = v
        if self.kind == "standard":
            return m
        if self.kind == "cycle":
            return self.kappa * (m - 1) + lam + 1
        raise ValueError("chain vectors have no single index")

    def vector(self, n: int) -> Basis:
        """Inverse of :meth:`index`."""
        if self.kind == "standard":
            return (0, n)
        if self.kind == "cycle":
            return ((n - 1) % self.kappa, (n - 1) // self.kappa + 1)
        raise ValueError("chain vectors have no single index")

    def first_vectors(self, count: int) -> List[Basis]:
        """The first ``count`` basis vectors in a fixed enumeration."""
        if self.kind != "chain":
            return [self.vector(n) for n in range(1, count + 1)]
        out = []
        radius = 0
        while len(out) < count:
            for lam in range(-radius, radius + 1):
                for m in range(1, radius + 2):
                    if max(abs(lam), m - 1) == radius:
                        out.append((lam, m))
            radius += 1
        return out[:count]

    # actions -----------------------------------------------------------
    def _decorate(self, i: int, v: Basis, c):
        return c if self.decoration is None else c * self.decoration(i, v)

    def act(self, i: int, v: Basis) -> Optional[Tuple[Basis, object]]:
        """``pi(s_i) e_v`` as ``(basis vector, coefficient)``."""
        if not 1 <= i <= self.d:
            raise ValueError(f"generator index {i} outside 1..{self.d}")
        lam, m = v
        new = self._lam(lam - 1)
        if m >= 2 or (self.kind == "chain" and lam <= 0):
            target = (new, _check_index(self.d * (m - 1) + i))
            return target, self._decorate(i, v, 1)
        top = self.letter(lam - 1)
        if i < top:
            return (new, i + 1), self._decorate(i, v, 1)
        if i == top:
            return (new, 1), self._decorate(i, v, coerce(self.root()))
        return (new, i), self._decorate(i, v, 1)

    def act_adjoint(self, i: int, v: Basis) -> Optional[Tuple[Basis, object]]:
        """``pi(s_i)^* e_v``, or ``None`` when it vanishes."""
        if not 1 <= i <= self.d:
            raise ValueError(f"generator index {i} outside 1..{self.d}")
        lam, m = v
        src_lam = self._lam(lam + 1)
        if m > self.d or (self.kind == "chain" and lam + 1 <= 0 and m >= 1):
            src_m, src_i = (m - 1) // self.d + 1, (m - 1) % self.d + 1
            if src_i != i:
                return None
            src = (src_lam, src_m)
            return src, conj(self._decorate(i, src, 1))
        top = self.letter(lam)
        if m == 1:
            if i != top:
                return None
            src = (src_lam, 1)
            return src, conj(self._decorate(i, src, coerce(self.root())))
        want = m - 1 if m <= top else m
        if i != want:
            return None
        src = (src_lam, 1)
        return src, conj(self._decorate(i, src, 1))

    def act_generator(self, i: int, v: Basis) -> Ket:
        hit = self.act(i, v)
        return Ket({hit[0]: hit[1]})

    def act_generator_adjoint(self, i: int, v: Basis) -> Ket:
        hit = self.act_adjoint(i, v)
        return Ket() if hit is None else Ket({hit[0]: hit[1]})

    def act_monomial(self, I: Word, R: Word, v: Basis) -> Optional[Tuple[Basis, object]]:
        """``pi(s_I s_{R_0}^* s_{R_1}^* ...) e_v``."""
        coeff = 1
        for i in reversed(R):
            hit = self.act_adjoint(i, v)
            if hit is None:
                return None
            v, c = hit
            coeff = coeff * c
        for i in reversed(I):
            v, c = self.act(i, v)
            coeff = coeff * c
        return v, coeff

    def act_element(self, x: Element, ket: Ket) -> Ket:
        """``pi(x)`` applied to ``ket``."""
        if x.d != self.d:
            raise ValueError(f"element of O_{x.d} acting in a representation of O_{self.d}")
        out = Ket()
        for v, a in ket.items():
            for (I, R), c in x:
                hit = self.act_monomial(I, R, v)
                if hit is not None:
                    out.add(hit[0], a * c * hit[1])
        return out


def standard_index(word: Sequence[int], n: int, d: int = 2) -> int:
    """``N(i_1..i_k; n) = (n-1) d^k + sum (i_j - 1) d^(j-1) + 1``."""
    k = len(word)
    return (n - 1) * d**k + sum((w - 1) * d**j for j, w in enumerate(word)) + 1


# eigenvector search ------------------------------------------------------


def primitive_words(d: int, length: int) -> Iterable[Word]:
    for w in itertools.product(range(1, d + 1), repeat=length):
        if not is_periodic(w):
            yield w


@dataclass
class EigenReport:
    hits: List[Tuple[Word, Basis]]
    search_depth: int
    max_len: int
    note: str = "certified up to the stated bounds only"

    @property
    def vectors(self) -> List[Basis]:
        return [v for _, v in self.hits]


def find_cycle_eigenvectors(
    rep: PermRep,
    morphism: Optional[Morphism],
    max_len: int = 2,
    search_depth: int = 16,
) -> EigenReport:
    """Basis vectors ``e`` with ``(rep o morphism)(s_w) e = e`` for a short word ``w``.

    Each hit is reported with the first word of minimal length in
    lexicographic order; periodic words are skipped.
    """
    d = morphism.source_d if morphism is not None else rep.d
    hits = []
    for v in rep.first_vectors(search_depth):
        target = Ket.basis(*v)
        found = None
        for length in range(1, max_len + 1):
            for w in primitive_words(d, length):
                x = Element.word(d, w) if morphism is None else morphism.image_word(w)
                if rep.act_element(x, target).close_to(target, 1e-12):
                    found = w
                    break
            if found:
                break
        if found:
            hits.append((found, v))
    return EigenReport(hits, search_depth, max_len)


# labels and branching ------------------------------------------------------


def label_canonical(L: Sequence[int]) -> Tuple[int, ...]:
    """Lexicographically smallest rotation."""
    L = tuple(L)
    return min(L[k:] + L[:k] for k in range(len(L)))


def label_period(L: Sequence[int]) -> int:
    """Smallest ``M`` with ``L`` invariant under rotation by ``M``."""
    L = tuple(L)
    k = len(L)
    for M in range(1, k + 1):
        if k % M == 0 and L[M:] + L[:M] == L:
            return M
    return k


def tail_equivalent(a: Tuple[Sequence[int], Sequence[int]], b: Tuple[Sequence[int], Sequence[int]]) -> bool:
    """Tail equivalence of two eventually periodic sequences ``(prefix, block)``."""
    ca = tuple(a[1])[: label_period(a[1])]
    cb = tuple(b[1])[: label_period(b[1])]
    return len(ca) == len(cb) and label_canonical(ca) == label_canonical(cb)


@lru_cache(maxsize=None)
def necklace_count(n: int) -> int:
    """``C_n`` from the recurrence ``sum_{k | n} k C_k = 2^n``."""
    if n < 1:
        raise ValueError("n must be positive")
    rest = sum(k * necklace_count(k) for k in sympy.divisors(n) if k < n)
    return (2**n - rest) // n


def necklace_count_closed(n: int) -> int:
    """``C_n = (1/n) sum_{k | n} mu(n/k) 2^k``."""
    total = sum(sympy.mobius(n // k) * 2**k for k in sympy.divisors(n))
    return int(total) // n


def branching_number(p: int) -> int:
    """``B_p = sum_{n | p} C_n``."""
    return sum(necklace_count(n) for n in sympy.divisors(p))


def enumerate_branch_labels(p: int) -> List[Tuple[int, ...]]:
    """Nonperiodic binary labels of length dividing ``p``, one per rotation class."""
    out = []
    for n in sympy.divisors(p):
        seen = set()
        for w in itertools.product((1, 2), repeat=n):
            if is_periodic(w):
                continue
            c = label_canonical(w)
            if c not in seen:
                seen.add(c)
                out.append(c)
    return sorted(out, key=lambda w: (len(w), w))


def branch_index(L: Sequence[int], lam: int, p: int) -> int:
    """``N(L, lam) = (2^p-1)/(2^k-1) sum_l (i_{lam+l-1}-1) 2^(l-1) + 1``."""
    L = tuple(L)
    k = len(L)
    if p % k:
        raise ValueError("label length must divide p")
    s = sum((L[(lam + ell - 1) % k] - 1) * 2 ** (ell - 1) for ell in range(1, k + 1))
    return (2**p - 1) // (2**k - 1) * s + 1


def certify_branch_label(L: Sequence[int], lam: int, p: int, morphism: Optional[Morphism] = None) -> Tuple[int, bool]:
    """Check ``(pi_s o phi_sigma_p)(s_w) e_N = e_N`` at ``N = N(L, lam)``.

    ``w`` is ``L`` repeated to length ``p`` and rotated left by ``lam``.
    Returns ``(N, ok)``.
    """
    L = tuple(L)
    k = len(L)
    N = branch_index(L, lam, p)
    w = L * (p // k)
    w = w[lam % k:] + w[: lam % k]
    m = morphism if morphism is not None else phi_sigma(p)
    e = Ket.basis(0, N)
    ok = PermRep.standard(2).act_element(m.image_word(w), e).close_to(e, 1e-12)
    return N, ok


def reduced_label_index(i0: int, d: int, q: int) -> int:
    """``(d^q - 1)/(d - 1) (i_0 - 1) + 1``."""
    return (d**q - 1) // (d - 1) * (i0 - 1) + 1


@dataclass
class ReductionReport:
    passed: bool
    checked: int
    failures: List[str]


def restriction_reduction_check(i0: int = 1, q: int = 2, d: int = 2, n_max: int = 8) -> ReductionReport:
    """Check ``pi_s^(q) = pi_s^(1) o Psi_q`` and the index map for ``Rep(i_0)``."""
    failures = []
    checked = 0
    psi = homogeneous_embedding(d, q)
    big = PermRep.standard(d**q)
    small = PermRep.standard(d)
    for n in range(1, n_max + 1):
        for i in range(1, d**q + 1):
            lhs = small.act_element(psi.images[i - 1], Ket.basis(0, n))
            rhs = big.act_generator(i, (0, n))
            checked += 1
            if lhs != rhs:
                failures.append(f"generator {i} on e_{n}")
    tilde = reduced_label_index(i0, d, q)
    checked += 1
    if digits(tilde, d, q) != (i0,) * q:
        failures.append(f"index {tilde} does not spell ({i0},)*{q}")
    rep = PermRep.cycle((i0,), d=d)
    e = Ket.basis(0, 1)
    checked += 1
    if rep.act_element(psi.images[tilde - 1], e) != e:
        failures.append(f"s'_{tilde} does not fix the central vector of Rep({i0})")
    return ReductionReport(not failures, checked, failures)


def parse_rep(text: str, d: int = 2) -> PermRep:
    """Parse ``Rep(1,2;z=1)``, ``Rep(1|2)`` or ``Rep(1)``."""
    t = text.replace(" ", "")
    if not (t.startswith("Rep(") and t.endswith(")")):
        raise ValueError(f"cannot parse representation {text!r}")
    body = t[4:-1]
    if "|" in body:
        pre, blk = body.split("|", 1)
        prefix = tuple(int(x) for x in pre.split(",") if x)
        return PermRep.chain(prefix, tuple(int(x) for x in blk.split(",")), d)
    z = 1
    if ";" in body:
        body, zt = body.split(";", 1)
        z = complex(zt.split("=", 1)[-1].replace("i", "j"))
        z = int(z.real) if z.imag == 0 and z.real == int(z.real) else z
    label = tuple(int(x) for x in body.split(","))
    if label == (1,) and z == 1:
        return PermRep.standard(d)
    return PermRep.cycle(label, z, d)
