"""Unital *-homomorphisms between Cuntz algebras.

A :class:`Morphism` is stored through the images of the source generators.
Constructors cover the Cuntz, generalized and inductive embeddings, the
homogeneous and monomial embeddings, the canonical endomorphism, permutation
and homogeneous endomorphisms, general and inhomogeneous endomorphisms, the
endomorphisms attached to cycle labels, the even-CAR family ``phi_sigma``,
and the U(d) automorphisms.  :func:`catalogue` resolves text names such as
``"phi[1,4][2,3]"``, ``"rho^2"`` or ``"psi_hom(2,3)"``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .algebra import (
    Element,
    Word,
    adjoint,
    check_cuntz_family,
    equals,
    words,
)


def digits(index: int, d: int, length: int) -> Word:
    """Multi-index of ``index`` with ``index - 1 = sum (i_k - 1) d^(k-1)``."""
    if not 1 <= index <= d**length:
        raise ValueError(f"index {index} outside 1..{d ** length}")
    n = index - 1
    out = []
    for _ in range(length):
        out.append(n % d + 1)
        n //= d
    return tuple(out)


def undigits(word: Sequence[int], d: int) -> int:
    """Inverse of :func:`digits`."""
    return sum((w - 1) * d**k for k, w in enumerate(word)) + 1


class Morphism:
    """Unital *-homomorphism ``O_{source_d} -> O_{target_d}``.

    Parameters
    ----------
    images : sequence of Element
        ``images[i - 1]`` is the image of the source generator ``s_i``.
    name : str, optional
        Label used in reports.
    """

    def __init__(self, images: Sequence[Element], name: str = ""):
        if not images:
            raise ValueError("a morphism needs at least two generator images")
        self.images = tuple(images)
        self.source_d = len(self.images)
        self.target_d = self.images[0].d
        for x in self.images:
            if x.d != self.target_d:
                raise ValueError("generator images live in different algebras")
        self.name = name
        self._words: Dict[Word, Element] = {(): Element.identity(self.target_d)}

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"Morphism{label}(O_{self.source_d} -> O_{self.target_d})"

    def image_word(self, w: Word) -> Element:
        """Image of the isometry ``s_w``, memoised by prefix."""
        w = tuple(w)
        hit = self._words.get(w)
        if hit is not None:
            return hit
        out = self.image_word(w[:-1]) * self.images[w[-1] - 1]
        self._words[w] = out
        return out

    def __call__(self, x: Element) -> Element:
        return apply(self, x)

    def is_valid(self) -> bool:
        """True when the images form a Cuntz family of size ``source_d``."""
        return check_cuntz_family(list(self.images), self.source_d)

    def __eq__(self, other):
        if not isinstance(other, Morphism):
            return NotImplemented
        return (
            self.source_d == other.source_d
            and self.target_d == other.target_d
            and all(equals(a, b) for a, b in zip(self.images, other.images))
        )

    __hash__ = None

    def is_gauge_invariant(self) -> bool:
        """True when every generator image has gauge degree one."""
        for x in self.images:
            for (I, R), _ in x:
                if len(I) - len(R) != 1:
                    return False
        return True


def apply(m: Morphism, x: Element) -> Element:
    """Extend ``m`` linearly, multiplicatively and *-compatibly to ``x``."""
    if x.d != m.source_d:
        raise ValueError(f"element of O_{x.d} given to a morphism from O_{m.source_d}")
    out = Element.zero(m.target_d)
    acc: Dict = {}
    for (I, R), c in x:
        left = m.image_word(I)
        prod = left if not R else left * adjoint(m.image_word(R[::-1]))
        for key, v in prod:
            acc[key] = acc.get(key, 0) + c * v
    return Element(m.target_d, acc, x.tol) if acc else out


def compose(m2: Morphism, m1: Morphism, name: str = "") -> Morphism:
    """The composite ``m2 o m1``."""
    if m1.target_d != m2.source_d:
        raise ValueError("composition with mismatched algebras")
    label = name or (f"{m2.name}*{m1.name}" if m2.name and m1.name else "")
    return Morphism([apply(m2, x) for x in m1.images], label)


def identity(d: int) -> Morphism:
    return Morphism([Element.gen(d, i) for i in range(1, d + 1)], "id")


# embeddings ---------------------------------------------------------------


def cuntz_embedding(d_prime: int) -> Morphism:
    """``O_{d'} -> O_2`` with ``S_i = s_2^(i-1) s_1`` and ``S_{d'} = s_2^(d'-1)``."""
    if d_prime < 2:
        raise ValueError("d' must be at least 2")
    imgs = [Element.word(2, (2,) * (i - 1) + (1,)) for i in range(1, d_prime)]
    imgs.append(Element.word(2, (2,) * (d_prime - 1)))
    return Morphism(imgs, f"cuntz({d_prime})")


def generalized_cuntz_embedding(d: int, n: int) -> Morphism:
    """``O_{(d-1)n+1} -> O_d`` built from ``s_d^k s_i`` and ``s_d^n``."""
    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    imgs = []
    for k in range(n):
        for i in range(1, d):
            imgs.append(Element.word(d, (d,) * k + (i,)))
    imgs.append(Element.word(d, (d,) * n))
    return Morphism(imgs, f"gcuntz({d},{n})")


def inductive_extension(m: Morphism) -> Morphism:
    """Replace the last image ``S`` by ``S s_1, ..., S s_d``."""
    d = m.target_d
    *head, last = m.images
    tail = [last * Element.gen(d, i) for i in range(1, d + 1)]
    return Morphism(list(head) + tail, f"ext({m.name})" if m.name else "")


def homogeneous_embedding(d: int, p: int) -> Morphism:
    """``O_{d^p} -> O_d`` sending ``s'_i`` to ``s_{i_1 ... i_p}``."""
    if p < 1:
        raise ValueError("p must be positive")
    imgs = [Element.word(d, digits(i, d, p)) for i in range(1, d**p + 1)]
    return Morphism(imgs, f"psi_hom({d},{p})")


def monomial_embedding(target_word: Sequence[int], d: int = 2) -> Morphism:
    """Embedding ``O_{(d-1)n+1} -> O_d`` whose last image is ``s_{target_word}``."""
    w = tuple(target_word)
    if not w or any(not 1 <= x <= d for x in w):
        raise ValueError("target word must be nonempty with letters in 1..d")
    n = len(w)
    imgs = []
    for k in range(n):
        prefix = w[:k]
        skip = w[k]
        for j in range(1, d):
            letter = j if j < skip else j + 1
            imgs.append(Element.word(d, prefix + (letter,)))
    imgs.append(Element.word(d, w))
    return Morphism(imgs, f"mono{w}")


def psi_reduction(r: int, p: int) -> Morphism:
    """Homogeneous embedding of ``O_{2^p}`` into ``O_{2^r}`` for ``r | p``."""
    if r < 1 or p % r:
        raise ValueError(f"{r} does not divide {p}")
    m = homogeneous_embedding(2**r, p // r)
    m.name = f"psi({r},{p})"
    return m


# endomorphisms ------------------------------------------------------------


def canonical_endomorphism(d: int) -> Morphism:
    """``rho(s_i) = sum_j s_j s_i s_j^*``."""
    imgs = []
    for i in range(1, d + 1):
        imgs.append(Element(d, {((j, i), (j,)): 1 for j in range(1, d + 1)}))
    return Morphism(imgs, "rho")


def rho_power(d: int, p: int) -> Morphism:
    """``rho^p``, with ``rho^0`` the identity."""
    if p < 0:
        raise ValueError("p must be nonnegative")
    m = identity(d)
    rho = canonical_endomorphism(d)
    for _ in range(p):
        m = compose(rho, m)
    m.name = f"rho^{p}"
    return m


@dataclass(frozen=True)
class PermutationSpec:
    """A permutation of ``{1, ..., d^order}`` acting on multi-indices.

    ``sigma[k - 1]`` is the image of ``k``.  Indices correspond to
    multi-indices ``(i, j_1, ..., j_p)`` through :func:`digits`.
    """

    d: int
    order: int
    sigma: Tuple[int, ...]

    def __post_init__(self):
        size = self.d**self.order
        if sorted(self.sigma) != list(range(1, size + 1)):
            raise ValueError(f"sigma is not a bijection of 1..{size}")

    @classmethod
    def from_cycles(cls, d: int, order: int, cycles: Sequence[Sequence[int]]) -> "PermutationSpec":
        """Build from cycle notation, each element mapping to the next in its cycle."""
        size = d**order
        sigma = list(range(1, size + 1))
        seen = set()
        for cyc in cycles:
            for k, a in enumerate(cyc):
                if a in seen or not 1 <= a <= size:
                    raise ValueError(f"bad cycle entry {a}")
                seen.add(a)
                sigma[a - 1] = cyc[(k + 1) % len(cyc)]
        return cls(d, order, tuple(sigma))

    @classmethod
    def from_multi(cls, d: int, order: int, rule) -> "PermutationSpec":
        """Build from a function on multi-indices ``(i, j_1, ..., j_p)``."""
        sigma = tuple(undigits(rule(digits(k, d, order)), d) for k in range(1, d**order + 1))
        return cls(d, order, sigma)

    def multi(self, word: Sequence[int]) -> Word:
        return digits(self.sigma[undigits(word, self.d) - 1], self.d, self.order)

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``u`` with ``u[k, l] = 1`` iff ``k = sigma(l)``."""
        n = len(self.sigma)
        u = np.zeros((n, n), dtype=int)
        for ell, k in enumerate(self.sigma):
            u[k - 1, ell] = 1
        return u


def permutation_endomorphism(spec: PermutationSpec, name: str = "") -> Morphism:
    """``phi(s_i) = sum_J s_{sigma(i, J)} (s_J)^*`` over words ``J`` of length ``order - 1``."""
    d, p = spec.d, spec.order - 1
    imgs = []
    for i in range(1, d + 1):
        terms = {}
        for J in words(d, p):
            terms[(spec.multi((i,) + J), J[::-1])] = 1
        imgs.append(Element(d, terms))
    return Morphism(imgs, name)


def _is_unitary(u: np.ndarray) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    if u.dtype == object:
        n = u.shape[0]
        inexact = any(isinstance(c, (float, complex)) for c in u.flat)
        for a in range(n):
            for b in range(n):
                s = sum(u[k, a] * _conj(u[k, b]) for k in range(n)) - (1 if a == b else 0)
                if (abs(s) > 1e-12) if inexact else (s != 0):
                    return False
        return True
    prod = u.conj().T @ u
    return bool(np.allclose(prod, np.eye(u.shape[0]), atol=1e-12))


def _scalar_matrix(u) -> np.ndarray:
    """Object array of exact scalars; integer entries of numeric input stay exact."""
    arr = np.asarray(u)
    if arr.dtype == object:
        return arr
    out = np.empty(arr.shape, dtype=object)
    for idx, c in np.ndenumerate(arr):
        c = complex(c)
        if c.imag == 0 and c.real == int(c.real):
            out[idx] = int(c.real)
        else:
            out[idx] = c
    return out


def _conj(c):
    return c.conjugate() if hasattr(c, "conjugate") else c


def homogeneous_endomorphism(d: int, p: int, u) -> Morphism:
    """Endomorphism from a scalar unitary ``u`` of size ``d^(p+1)``.

    ``phi(s_i) = sum_j S'_{(j-1)d+i} (S^(p)_j)^*`` with
    ``S'_l = sum_k S^(p+1)_k u[k, l]``.
    """
    u = _scalar_matrix(u)
    size = d ** (p + 1)
    if u.shape != (size, size):
        raise ValueError(f"u must be {size}x{size}")
    if not _is_unitary(u):
        raise ValueError("u is not unitary")
    imgs = []
    for i in range(1, d + 1):
        terms: Dict = {}
        for j in range(1, d**p + 1):
            ell = (j - 1) * d + i
            J = digits(j, d, p)
            for k in range(1, size + 1):
                c = u[k - 1, ell - 1]
                if c == 0:
                    continue
                key = (digits(k, d, p + 1), J[::-1])
                terms[key] = terms.get(key, 0) + c
        imgs.append(Element(d, terms))
    return Morphism(imgs, f"hom({d},{p})")


def general_endomorphism(parts: Sequence[Optional[Morphism]], d: Optional[int] = None) -> Morphism:
    """Endomorphism glued from ``d`` inner families and one outer family.

    ``parts[i - 1]`` is an embedding ``O_{d_i} -> O_d`` (``None`` means
    ``d_i = 1`` with the family ``{I}``) and ``parts[d]`` embeds ``O_D``
    with ``D = sum d_i``.  Then
    ``phi(s_i) = sum_j S^[d+1]_{D_{i-1}+j} (S^[i]_j)^*``.
    """
    *inner, outer = parts
    d = d or outer.target_d
    if len(inner) != d:
        raise ValueError(f"need {d} inner families plus one outer family")
    sizes = [1 if m is None else m.source_d for m in inner]
    for m in inner:
        if m is not None and m.target_d != d:
            raise ValueError("inner family lives in the wrong algebra")
        if m is not None and (m.source_d - 1) % (d - 1):
            raise ValueError("inner family size is not of the form (d-1)n+1")
    if outer.source_d != sum(sizes) or outer.target_d != d:
        raise ValueError(f"outer family must embed O_{sum(sizes)} into O_{d}")
    imgs = []
    offset = 0
    for m, size in zip(inner, sizes):
        total = Element.zero(d)
        for j in range(1, size + 1):
            S = outer.images[offset + j - 1]
            T = Element.identity(d) if m is None else m.images[j - 1]
            total = total + S * adjoint(T)
        imgs.append(total)
        offset += size
    return Morphism(imgs, "general")


def inhomogeneous_endomorphism(d: int, n: int, parts: Sequence[Optional[Morphism]]) -> Morphism:
    """``phi(s_i) = S_i`` for ``i < d`` and ``phi(s_d) = sum_j S_{j+d-1} T_j^*``.

    ``parts = (T, S)`` where ``T`` embeds ``O_{(d-1)n+1}`` (``None`` for the
    generators themselves, which needs ``n = 1``) and ``S`` embeds
    ``O_{(d-1)(n+1)+1}``.
    """
    inner, outer = parts
    size = (d - 1) * n + 1
    if inner is None:
        if n != 1:
            raise ValueError("the trivial inner family needs n = 1")
        inner = identity(d)
    if inner.source_d != size:
        raise ValueError(f"inner family must embed O_{size}")
    if outer.source_d != d - 1 + size:
        raise ValueError(f"outer family must embed O_{d - 1 + size}")
    m = general_endomorphism([None] * (d - 1) + [inner, outer], d)
    m.name = "inhom"
    return m


def unitary_of_endomorphism(m: Morphism) -> Element:
    """``u = sum_i phi(s_i) s_i^*``."""
    if m.source_d != m.target_d:
        raise ValueError("not an endomorphism")
    d = m.source_d
    total = Element.zero(d)
    for i, x in enumerate(m.images, start=1):
        total = total + x * Element.mono(d, (), (i,))
    return total


def endomorphism_of_unitary(u: Element, check: bool = True) -> Morphism:
    """``phi(s_i) = u s_i``."""
    d = u.d
    if check:
        one = Element.identity(d)
        if not (equals(u * u.star, one) and equals(u.star * u, one)):
            raise ValueError("u is not unitary")
    return Morphism([u * Element.gen(d, i) for i in range(1, d + 1)], "ad")


def gauge_automorphism(z, d: int = 2) -> Morphism:
    """``s_i -> z s_i``."""
    return Morphism([Element(d, {((i,), ()): z}) for i in range(1, d + 1)], "gauge")


# Coefficients below this size are dropped from float-valued images.
FLOAT_ELEMENT_TOL = 1e-14


def u_d_automorphism(v) -> Morphism:
    """``alpha_v(s_i) = sum_j s_j v[j, i]``."""
    v = _scalar_matrix(v)
    d = v.shape[0]
    if v.shape != (d, d) or not _is_unitary(v):
        raise ValueError("v must be a unitary d x d matrix")
    tol = FLOAT_ELEMENT_TOL if any(isinstance(c, (float, complex)) for c in v.flat) else 0.0
    imgs = []
    for i in range(d):
        imgs.append(Element(d, {((j + 1,), ()): v[j, i] for j in range(d)}, tol))
    return Morphism(imgs, "alpha_v")


def alpha_theta(theta: float) -> Morphism:
    """Rotation ``s_1 -> cos s_1 - sin s_2``, ``s_2 -> sin s_1 + cos s_2``."""
    c, s = math.cos(theta), math.sin(theta)
    imgs = [
        Element(2, {((1,), ()): c, ((2,), ()): -s}, FLOAT_ELEMENT_TOL),
        Element(2, {((1,), ()): s, ((2,), ()): c}, FLOAT_ELEMENT_TOL),
    ]
    return Morphism(imgs, f"alpha_theta({theta})")


def swap_automorphism() -> Morphism:
    """The flip ``s_1 <-> s_2`` of O_2."""
    return Morphism([Element.gen(2, 2), Element.gen(2, 1)], "alpha")


# endomorphisms attached to labels and the even family ---------------------


def _hat(i: int) -> int:
    return 3 - i


def label_to_standard_endomorphism(L: Sequence[int], z=1) -> Morphism:
    """Endomorphism ``phi`` of O_2 with ``pi_L o phi`` equivalent to ``pi_s``.

    For ``L = (i_0, ..., i_{k-1})`` the generator lists are
    ``S_1 = s_{^i_0}``, ``S_j = s_{i_0 .. i_{j-2}, ^i_{j-1}}``,
    ``S_{k+1} = conj(z) s_L`` and ``T_1 = s_{i_0}``,
    ``T_j = s_{^i_0 .. ^i_{j-2}, i_{j-1}}``, ``T_k = s_{^i_0 .. ^i_{k-2}}``,
    with ``^i = 3 - i``.  Then ``phi(s_1) = S_{k+1}`` and
    ``phi(s_2) = sum_j S_j T_j^*``.  The label ``(1, 2, 1, 3)`` of O_3 is
    served from a stored fixture.
    """
    L = tuple(L)
    if L == (1, 2, 1, 3):
        return _label_1213()
    if any(x not in (1, 2) for x in L) or not L:
        raise ValueError("labels must be nonempty words over {1, 2}")
    if is_periodic(L):
        raise ValueError(f"label {L} is periodic")
    k = len(L)
    S = [Element.word(2, (_hat(L[0]),))]
    for j in range(2, k + 1):
        S.append(Element.word(2, L[: j - 1] + (_hat(L[j - 1]),)))
    S.append(Element.word(2, L, _conj(z)))
    if k == 1:
        T = [Element.identity(2)]
    else:
        T = [Element.word(2, (L[0],))]
        for j in range(2, k):
            T.append(Element.word(2, tuple(_hat(x) for x in L[: j - 1]) + (L[j - 1],)))
        T.append(Element.word(2, tuple(_hat(x) for x in L[: k - 1])))
    phi2 = reduce(lambda a, b: a + b, (s * adjoint(t) for s, t in zip(S[:k], T)))
    return Morphism([S[k], phi2], f"pi_L{L}")


def _label_1213() -> Morphism:
    d = 3
    mono = lambda l, r: Element.mono(d, l, r)  # noqa: E731
    phi3 = (
        mono((3,), (1,))
        + mono((1, 3), (2, 2))
        + mono((1, 1), (3, 2))
        + mono((1, 2, 2), (1, 2))
        + mono((1, 2, 3), (2, 3))
        + mono((1, 2, 1, 1), (3, 3))
        + mono((1, 2, 1, 2), (1, 3))
    )
    return Morphism([Element.word(d, (1, 2, 1, 3)), Element.gen(d, 2), phi3], "pi_L(1,2,1,3)")


def is_periodic(L: Sequence[int]) -> bool:
    """True when some proper rotation of ``L`` equals ``L``."""
    L = tuple(L)
    k = len(L)
    return any(k % M == 0 and L[M:] + L[:M] == L for M in range(1, k))


def J_element() -> Element:
    """``J = s_{2;1} + s_{1;2}``."""
    return Element.mono(2, (2,), (1,)) + Element.mono(2, (1,), (2,))


def phi_sigma_multi(P: Sequence[int]) -> Morphism:
    """``phi(s_1) = s_1``, ``phi(s_2) = s_2 prod_k rho^(p_k - 1)(J)``."""
    P = tuple(int(p) for p in P)
    if not P or len(P) % 2 == 0 or any(a >= b for a, b in zip(P, P[1:])) or P[0] < 1:
        raise ValueError("P must be a strictly ascending list of odd length of positive integers")
    J = J_element()
    img = Element.gen(2, 2)
    for p in P:
        img = img * apply(rho_power(2, p - 1), J)
    name = f"phi_sigma({P[0]})" if len(P) == 1 else "phi_sigma(" + ",".join(map(str, P)) + ")"
    return Morphism([Element.gen(2, 1), img], name)


def phi_sigma(p: int) -> Morphism:
    return phi_sigma_multi((p,))


def phi_sigma_spec(P: Sequence[int]) -> PermutationSpec:
    """The permutation flipping ``j_{p_k}`` whenever the first letter is 2."""
    P = tuple(P)
    top = P[-1]

    def rule(w):
        if w[0] == 1:
            return w
        w = list(w)
        for p in P:
            w[p] = 3 - w[p]
        return tuple(w)

    return PermutationSpec.from_multi(2, top + 1, rule)


def phi_sigma_closure(P: Sequence[int], Q: Sequence[int]) -> Tuple[int, ...]:
    """Index set ``R`` with ``phi_R = phi_P o phi_Q``.

    ``phi_P`` corresponds to the GF(2) polynomial ``1 + sum x^p``; the
    composite corresponds to the product of the two polynomials.
    """
    def poly(S):
        return {0, *S}

    prod: Dict[int, int] = {}
    for a in poly(P):
        for b in poly(Q):
            prod[a + b] = prod.get(a + b, 0) ^ 1
    return tuple(sorted(e for e, bit in prod.items() if bit and e))


def phi_prime_sigma(p: int) -> Morphism:
    """``phi'(s_1) = s_1``, ``phi'(s_2) = s_2 prod_{k=0}^{p-2} rho^k(J)``."""
    J = J_element()
    img = Element.gen(2, 2)
    for k in range(p - 1):
        img = img * apply(rho_power(2, k), J)
    return Morphism([Element.gen(2, 1), img], f"phi_prime({p})")


def xi(x: Element) -> Element:
    """``xi(X) = s_2 X s_1^* + s_1 X s_2^*``."""
    s1, s2 = Element.gen(2, 1), Element.gen(2, 2)
    return s2 * x * s1.star + s1 * x * s2.star


def J_k(k: int) -> Element:
    x = Element.identity(2)
    for _ in range(k):
        x = xi(x)
    return x


def hat_phi(k: int) -> Morphism:
    """``X -> U X U^*`` with ``U = J_{k-1} J_k`` (``U = J`` for ``k = 1``)."""
    if k < 1:
        raise ValueError("k must be positive")
    U = J_k(k - 1) * J_k(k)
    return Morphism([U * Element.gen(2, i) * U.star for i in (1, 2)], f"hat_phi({k})")


def hat_phi_spec(k: int) -> PermutationSpec:
    """Permutation form of :func:`hat_phi`: flip ``j_{k-1}`` and ``j_k`` (``j_0 = i``)."""

    def rule(w):
        w = list(w)
        w[k] = 3 - w[k]
        w[k - 1] = 3 - w[k - 1]
        return tuple(w)

    return PermutationSpec.from_multi(2, k + 1, rule)


# catalogue ----------------------------------------------------------------

_CYCLES = re.compile(r"^phi((?:\[\d+(?:,\d+)*\])+)$")
_INTS = re.compile(r"\((\s*\d+(?:\s*,\s*\d+)*\s*)\)$")


def second_order(cycles: Sequence[Sequence[int]]) -> Morphism:
    """Second-order permutation endomorphism of O_2 from cycle notation."""
    spec = PermutationSpec.from_cycles(2, 2, cycles)
    name = "phi" + "".join("[" + ",".join(map(str, c)) + "]" for c in cycles) if cycles else "id"
    return permutation_endomorphism(spec, name)


def _ints(text: str) -> Tuple[int, ...]:
    m = _INTS.search(text)
    if not m:
        raise KeyError(text)
    return tuple(int(x) for x in m.group(1).split(","))


def catalogue(name: str) -> Morphism:
    """Resolve a morphism by its text name.

    Recognised forms: ``id``, ``alpha``, ``rho``, ``rho^p``, ``phi[..][..]``
    (second-order cycles), ``phi_sigma(p, ...)``, ``phi_prime(p)``,
    ``hat_phi(k)``, ``cuntz(d')``, ``gcuntz(d,n)``, ``psi_hom(d,p)``,
    ``mono(i_1,...)``, ``pi_L(i_0,...)``, ``vr1`` and ``vr2``.
    """
    key = name.replace(" ", "")
    if key == "id":
        return identity(2)
    if key == "alpha":
        return swap_automorphism()
    if key == "rho":
        return canonical_endomorphism(2)
    if key.startswith("rho^"):
        return rho_power(2, int(key[4:]))
    m = _CYCLES.match(key)
    if m:
        cycles = [tuple(int(x) for x in c.split(",")) for c in re.findall(r"\[([\d,]+)\]", m.group(1))]
        return second_order(cycles)
    builders = {
        "phi_sigma": lambda a: phi_sigma_multi(a),
        "phi_prime": lambda a: phi_prime_sigma(*a),
        "hat_phi": lambda a: hat_phi(*a),
        "cuntz": lambda a: cuntz_embedding(*a),
        "gcuntz": lambda a: generalized_cuntz_embedding(*a),
        "psi_hom": lambda a: homogeneous_embedding(*a),
        "mono": lambda a: monomial_embedding(a),
        "pi_L": lambda a: label_to_standard_endomorphism(a),
    }
    head = key.split("(", 1)[0]
    if head in builders:
        return builders[head](_ints(key))
    if key in ("vr1", "vr2"):
        from .rfs import variant_endomorphism

        return variant_endomorphism(int(key[-1]))
    raise KeyError(f"unknown morphism {name!r}")


SECOND_ORDER_CYCLES: Dict[str, Tuple[Tuple[int, ...], ...]] = {
    "id": (),
    "phi[1,2]": ((1, 2),),
    "phi[1,3]": ((1, 3),),
    "phi[1,4]": ((1, 4),),
    "phi[2,3]": ((2, 3),),
    "phi[2,4]": ((2, 4),),
    "phi[3,4]": ((3, 4),),
    "phi[1,2][3,4]": ((1, 2), (3, 4)),
    "phi[1,3][2,4]": ((1, 3), (2, 4)),
    "phi[1,4][2,3]": ((1, 4), (2, 3)),
    "phi[1,2,3]": ((1, 2, 3),),
    "phi[1,2,4]": ((1, 2, 4),),
    "phi[1,3,2]": ((1, 3, 2),),
    "phi[1,3,4]": ((1, 3, 4),),
    "phi[1,4,2]": ((1, 4, 2),),
    "phi[1,4,3]": ((1, 4, 3),),
    "phi[2,3,4]": ((2, 3, 4),),
    "phi[2,4,3]": ((2, 4, 3),),
    "phi[1,2,3,4]": ((1, 2, 3, 4),),
    "phi[1,2,4,3]": ((1, 2, 4, 3),),
    "phi[1,3,2,4]": ((1, 3, 2, 4),),
    "phi[1,3,4,2]": ((1, 3, 4, 2),),
    "phi[1,4,2,3]": ((1, 4, 2, 3),),
    "phi[1,4,3,2]": ((1, 4, 3, 2),),
}


def all_second_order() -> Dict[str, Morphism]:
    """The 24 second-order permutation endomorphisms of O_2 keyed by name."""
    return {name: second_order(c) for name, c in SECOND_ORDER_CYCLES.items()}


def _m(l, r=()):
    return Element.mono(2, l, r)


# Explicit images of the second-order endomorphisms, as tabulated in the
# literature, used to cross-check the permutation construction.
SECOND_ORDER_IMAGES: Dict[str, Tuple[Element, Element]] = {}


def _fill_images():
    t = {
        "phi[1,2]": ([((2, 1), (1,)), ((1, 2), (2,))], [((1, 1), (1,)), ((2, 2), (2,))]),
        "phi[1,3]": ([((1, 2), (1,)), ((1, 1), (2,))], [((2,), ())]),
        "phi[1,4]": ([((2, 2), (1,)), ((1, 2), (2,))], [((2, 1), (1,)), ((1, 1), (2,))]),
        "phi[2,3]": ([((1, 1), (1,)), ((2, 1), (2,))], [((1, 2), (1,)), ((2, 2), (2,))]),
        "phi[2,4]": ([((1,), ())], [((2, 2), (1,)), ((2, 1), (2,))]),
        "phi[3,4]": ([((1, 1), (1,)), ((2, 2), (2,))], [((2, 1), (1,)), ((1, 2), (2,))]),
        "phi[1,2][3,4]": ([((2,), ())], [((1,), ())]),
        "phi[1,3][2,4]": ([((1, 2), (1,)), ((1, 1), (2,))], [((2, 2), (1,)), ((2, 1), (2,))]),
        "phi[1,4][2,3]": ([((2, 2), (1,)), ((2, 1), (2,))], [((1, 2), (1,)), ((1, 1), (2,))]),
        "phi[1,2,3]": ([((2, 1), (1,)), ((1, 1), (2,))], [((1, 2), (1,)), ((2, 2), (2,))]),
        "phi[1,2,4]": ([((2, 1), (1,)), ((1, 2), (2,))], [((2, 2), (1,)), ((1, 1), (2,))]),
        "phi[1,3,2]": ([((1, 2), (1,)), ((2, 1), (2,))], [((1, 1), (1,)), ((2, 2), (2,))]),
        "phi[1,3,4]": ([((1, 2), (1,)), ((2, 2), (2,))], [((2, 1), (1,)), ((1, 1), (2,))]),
        "phi[1,4,2]": ([((2, 2), (1,)), ((1, 2), (2,))], [((1, 1), (1,)), ((2, 1), (2,))]),
        "phi[1,4,3]": ([((2, 2), (1,)), ((1, 1), (2,))], [((2, 1), (1,)), ((1, 2), (2,))]),
        "phi[2,3,4]": ([((1, 1), (1,)), ((2, 2), (2,))], [((1, 2), (1,)), ((2, 1), (2,))]),
        "phi[2,4,3]": ([((1, 1), (1,)), ((2, 1), (2,))], [((2, 2), (1,)), ((1, 2), (2,))]),
        "phi[1,2,3,4]": ([((2,), ())], [((1, 2), (1,)), ((1, 1), (2,))]),
        "phi[1,2,4,3]": ([((2, 1), (1,)), ((1, 1), (2,))], [((2, 2), (1,)), ((1, 2), (2,))]),
        "phi[1,3,2,4]": ([((1, 2), (1,)), ((2, 1), (2,))], [((2, 2), (1,)), ((1, 1), (2,))]),
        "phi[1,3,4,2]": ([((1, 2), (1,)), ((2, 2), (2,))], [((1, 1), (1,)), ((2, 1), (2,))]),
        "phi[1,4,2,3]": ([((2, 2), (1,)), ((1, 1), (2,))], [((1, 2), (1,)), ((2, 1), (2,))]),
        "phi[1,4,3,2]": ([((2, 2), (1,)), ((2, 1), (2,))], [((1,), ())]),
        "id": ([((1,), ())], [((2,), ())]),
    }
    for name, (a, b) in t.items():
        SECOND_ORDER_IMAGES[name] = (
            reduce(lambda x, y: x + y, (_m(*k) for k in a)),
            reduce(lambda x, y: x + y, (_m(*k) for k in b)),
        )


_fill_images()

# Relations between second-order endomorphisms: name -> list of factors, the
# composite being read right to left (the last factor acts first).
SECOND_ORDER_RELATIONS: List[Tuple[str, Tuple[str, ...]]] = [
    ("phi[1,3]", ("alpha", "phi[2,4]", "alpha")),
    ("phi[3,4]", ("phi[1,2]", "alpha")),
    ("phi[1,3][2,4]", ("phi[1,4][2,3]", "alpha")),
    ("phi[1,3,2]", ("phi[2,3,4]", "alpha")),
    ("phi[1,3,4]", ("phi[1,2,3]", "alpha")),
    ("phi[1,4,2]", ("phi[2,4,3]", "alpha")),
    ("phi[1,4,3]", ("phi[1,2,4]", "alpha")),
    ("phi[2,4,3]", ("alpha", "phi[1,2,3]", "alpha")),
    ("phi[1,2,3,4]", ("phi[1,3]", "alpha")),
    ("phi[1,2,4,3]", ("phi[1,4]", "alpha")),
    ("phi[1,3,4,2]", ("phi[2,3]", "alpha")),
    ("phi[1,4,2,3]", ("phi[1,3,2,4]", "alpha")),
    ("phi[1,4,3,2]", ("phi[2,4]", "alpha")),
    ("phi[1,2][3,4]", ("alpha",)),
    ("phi[2,3]", ("rho",)),
]

# Composition identities among second-order endomorphisms.
SECOND_ORDER_COMPOSITIONS: List[Tuple[str, Tuple[str, ...]]] = [
    ("phi[1,2,3]", ("phi[1,3]", "phi[1,2]")),
    ("phi[1,3,4]", ("phi[1,3]", "phi[3,4]")),
    ("phi[1,4,2]", ("phi[2,4]", "phi[1,2]")),
    ("phi[2,4,3]", ("phi[2,4]", "phi[3,4]")),
    ("phi[1,2,4]", ("phi[1,2]", "phi[2,4]")),
    ("phi[1,3,2]", ("phi[1,2]", "phi[1,3]")),
    ("phi[1,4,3]", ("phi[3,4]", "phi[1,3]")),
    ("phi[2,3,4]", ("phi[3,4]", "phi[2,4]")),
]


def compose_names(names: Sequence[str]) -> Morphism:
    """Composite of catalogue morphisms, rightmost acting first."""
    ms = [catalogue(n) for n in names]
    return reduce(lambda a, b: compose(a, b), ms)
