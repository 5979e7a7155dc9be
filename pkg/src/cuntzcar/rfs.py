"""Recursive fermion systems and the CAR embedding into O_{2^p}.

A recursive fermion system of order ``p`` consists of ``p`` seeds
``a_1, ..., a_p`` in O_{2^p}, a recursive map
``zeta(X) = sum_i eps_i c_i X c_i^*`` given by signs ``eps_i`` and a Cuntz
family ``c_i``, and the endomorphism ``phi(XY) = zeta(X) zeta(Y)``.  The CAR
generators are ``a_{p(m-1)+j} -> zeta^(m-1)(a_j)``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .algebra import Element, adjoint, equals, words
from .carpoly import CarPolynomial
from .morphisms import (
    Morphism,
    apply,
    general_endomorphism,
    homogeneous_embedding,
    identity,
    inhomogeneous_endomorphism,
    psi_reduction,
)


def _bit_sign(n: int, count: int) -> int:
    """``(-1)^(sum_{m=1}^{count} floor(n / 2^(m-1)))``."""
    return -1 if sum(n >> (m - 1) for m in range(1, count + 1)) % 2 else 1


@dataclass
class Rfs:
    """A recursive fermion system of order ``p``.

    Attributes
    ----------
    p : int
    seeds : list of Element
    signs : list of int
        ``eps_i`` of the recursive map.
    conjugators : list of Element or None
        ``c_i``; ``None`` means the generators ``s_i`` (fast path).
    name : str
    """

    p: int
    seeds: List[Element]
    signs: List[int]
    conjugators: Optional[List[Element]] = None
    name: str = ""
    _memo: Dict[int, Element] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def d(self) -> int:
        return 2**self.p

    def conj_family(self) -> List[Element]:
        if self.conjugators is not None:
            return self.conjugators
        return [Element.gen(self.d, i) for i in range(1, self.d + 1)]

    def zeta(self, x: Element) -> Element:
        """The recursive map."""
        if self.conjugators is None:
            out: Dict = {}
            for i, eps in enumerate(self.signs, start=1):
                for (I, R), c in x:
                    key = ((i,) + I, R + (i,))
                    out[key] = out.get(key, 0) + eps * c
            return Element(self.d, out, x.tol)
        total: Dict = {}
        for eps, c in zip(self.signs, self.conjugators):
            for key, v in c * x * adjoint(c):
                total[key] = total.get(key, 0) + eps * v
        return Element(self.d, total, x.tol)

    def phi(self) -> Morphism:
        """``phi(X) = sum_i c_i X c_i^*`` as a morphism."""
        fam = self.conj_family()
        imgs = []
        for j in range(1, self.d + 1):
            g = Element.gen(self.d, j)
            total = Element.zero(self.d)
            for c in fam:
                total = total + c * g * adjoint(c)
            imgs.append(total)
        return Morphism(imgs, f"phi[{self.name}]")

    def car_image(self, n: int) -> Element:
        """Image of ``a_n``: ``zeta^(m-1)(a_j)`` with ``n = p(m-1) + j``."""
        if n < 1:
            raise ValueError("modes start at 1")
        hit = self._memo.get(n)
        if hit is not None:
            return hit
        if n <= self.p:
            out = self.seeds[n - 1]
        else:
            out = self.zeta(self.car_image(n - self.p))
        with self._lock:
            self._memo.setdefault(n, out)
        return self._memo[n]

    def in_zeta_image(self, y: Element) -> bool:
        """Decide whether ``y = zeta(X)`` for some ``X``.

        With ``X_ij = c_i^* y c_j`` this holds exactly when the off-diagonal
        blocks vanish and ``eps_i X_ii`` does not depend on ``i``.
        """
        fam = self.conj_family()
        blocks = [[adjoint(ci) * y * cj for cj in fam] for ci in fam]
        for i in range(self.d):
            for j in range(self.d):
                if i != j and not equals(blocks[i][j], Element.zero(self.d)):
                    return False
        ref = blocks[0][0].scale(self.signs[0])
        return all(equals(blocks[i][i].scale(self.signs[i]), ref) for i in range(1, self.d))


def standard_rfs(p: int) -> Rfs:
    """The standard system ``SR_p`` on O_{2^p}."""
    if p < 1:
        raise ValueError("p must be positive")
    d = 2**p
    seeds = []
    for j in range(1, p + 1):
        terms = {}
        for k in range(1, 2 ** (p - j) + 1):
            for ell in range(1, 2 ** (j - 1) + 1):
                sign = _bit_sign(ell - 1, j - 1)
                left = 2**j * (k - 1) + ell
                right = 2 ** (j - 1) * (2 * k - 1) + ell
                terms[((left,), (right,))] = sign
        seeds.append(Element(d, terms))
    signs = [_bit_sign(i - 1, p) for i in range(1, d + 1)]
    return Rfs(p, seeds, signs, None, f"SR{p}")


def twisted_rfs(r: Rfs, e: Morphism, name: str = "") -> Rfs:
    """Replace ``s_i`` by ``e(s_i)`` throughout ``r``."""
    if e.source_d != r.d or e.target_d != r.d:
        raise ValueError("twisting needs an endomorphism of the same algebra")
    seeds = [apply(e, a) for a in r.seeds]
    conj = [apply(e, c) for c in r.conj_family()]
    return Rfs(r.p, seeds, list(r.signs), conj, name or f"{r.name}@{e.name}")


def variant_endomorphism(which: int) -> Morphism:
    """Inhomogeneous endomorphisms of O_2 behind the two gauge-variant systems.

    ``1``: ``s_1 -> s_{1,2}``, ``s_2 -> s_{2;1} + s_{1,1;2}``.
    ``2``: ``s_1 -> s_{1;1} + s_{2,1;2}``, ``s_2 -> s_{2,2}``.
    """
    if which == 1:
        outer = Morphism([Element.word(2, (1, 2)), Element.gen(2, 2), Element.word(2, (1, 1))])
        m = inhomogeneous_endomorphism(2, 1, (None, outer))
    elif which == 2:
        outer = Morphism([Element.gen(2, 1), Element.word(2, (2, 1)), Element.word(2, (2, 2))])
        m = general_endomorphism([identity(2), None, outer])
    else:
        raise ValueError("variant must be 1 or 2")
    m.name = f"vr{which}"
    return m


def variant_rfs(which: int) -> Rfs:
    return twisted_rfs(standard_rfs(1), variant_endomorphism(which), f"VR{which}")


def rfs_fixture(name: str) -> Rfs:
    """``SR1``..``SR4``, ``VR1`` or ``VR2``."""
    key = name.upper()
    if key.startswith("SR"):
        return standard_rfs(int(key[2:]))
    if key in ("VR1", "VR2"):
        return variant_rfs(int(key[2]))
    raise KeyError(f"unknown recursive fermion system {name!r}")


# verification -------------------------------------------------------------


@dataclass
class CheckReport:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, ok: bool, witness: str):
        self.checked += 1
        if not ok:
            self.failures.append(witness)


def verify_car(r: Rfs, n_max: int, images: Optional[Sequence[Element]] = None) -> CheckReport:
    """Check ``{a_m, a_n} = 0`` and ``{a_m, a_n^*} = delta_mn I`` for modes up to ``n_max``."""
    rep = CheckReport(f"car[{r.name}]")
    imgs = list(images) if images is not None else [r.car_image(n) for n in range(1, n_max + 1)]
    stars = [adjoint(x) for x in imgs]
    one = Element.identity(r.d)
    zero = Element.zero(r.d)
    for m in range(len(imgs)):
        for n in range(m, len(imgs)):
            x, y = imgs[m], imgs[n]
            rep.record(equals(x * y + y * x, zero), f"{{a{m + 1}, a{n + 1}}} != 0")
            target = one if m == n else zero
            rep.record(
                equals(x * stars[n] + stars[n] * x, target),
                f"{{a{m + 1}, a{n + 1}*}} != {'I' if m == n else '0'}",
            )
    return rep


def generator_monomials(d: int, depth: int = 1) -> List[Element]:
    """Generator monomials ``s_I s_J^*`` with ``|I|, |J| <= depth``."""
    out = []
    for a in range(depth + 1):
        for b in range(depth + 1):
            for I in words(d, a):
                for J in words(d, b):
                    out.append(Element.mono(d, I, J))
    return out


def verify_axioms(r: Rfs, depth: int = 1) -> CheckReport:
    """Seed relations, recursive relations, normalization and the seed condition.

    The products ``zeta(X) zeta(Y)`` run over ``s_I s_J^*`` with
    ``|I|, |J| <= depth`` for ``d <= 4`` and over ``I``, ``s_i`` and ``s_i^*``
    for larger ``d``, where the full square would be quadratic in ``d^2``.
    """
    rep = CheckReport(f"axioms[{r.name}]")
    seeds = r.seeds
    one, zero = Element.identity(r.d), Element.zero(r.d)
    for j, x in enumerate(seeds):
        for k, y in enumerate(seeds):
            rep.record(equals(x * y + y * x, zero), f"{{a{j + 1}, a{k + 1}}}")
            rep.record(equals(x * y.star + y.star * x, one if j == k else zero), f"{{a{j + 1}, a{k + 1}*}}")
    if r.d <= 4:
        tests = generator_monomials(r.d, depth)
    else:
        gens = [Element.gen(r.d, i) for i in range(1, r.d + 1)]
        tests = [Element.identity(r.d)] + gens + [g.star for g in gens]
    phi = r.phi()
    for X in tests:
        zX = r.zeta(X)
        rep.record(equals(adjoint(zX), r.zeta(adjoint(X))), "zeta(X)^* != zeta(X^*)")
        for a in seeds:
            rep.record(equals(a * zX + zX * a, zero), "{seed, zeta(X)} != 0")
        for Y in tests:
            rep.record(equals(zX * r.zeta(Y), apply(phi, X * Y)), "zeta(X) zeta(Y) != phi(XY)")
    for j, a in enumerate(seeds):
        rep.record(not r.in_zeta_image(a), f"seed a{j + 1} lies in the image of zeta")
    return rep


# gauge-invariant monomials and the CAR algebra ----------------------------


def u1_monomial_to_car(I: Sequence[int], R: Sequence[int]) -> CarPolynomial:
    """CAR polynomial ``P`` with ``Phi_SR1(P) = s_{I;R}`` (``R`` in display order).

    With ``j_m = R[k - m]``, ``A_m`` is ``a_m a_m^*``, ``a_m``, ``a_m^*`` or
    ``a_m^* a_m`` for ``(i_m, j_m) = (1,1), (1,2), (2,1), (2,2)``, and the
    sign is ``(-1)^(sum_{m<k} (j_m - 1) N_m)`` where ``N_m`` counts the
    letters 2 among ``i_{m+1..k}`` and ``j_{m+1..k}``.
    """
    I, R = tuple(I), tuple(R)
    k = len(I)
    if len(R) != k:
        raise ValueError("only gauge-invariant monomials (|I| = |J|) lie in the CAR image")
    J = tuple(R[k - m] for m in range(1, k + 1))
    ops: List = []
    table = {(1, 1): [False, True], (1, 2): [False], (2, 1): [True], (2, 2): [True, False]}
    for m in range(1, k + 1):
        for dag in table[(I[m - 1], J[m - 1])]:
            ops.append((m, dag))
    exponent = 0
    for m in range(1, k):
        if J[m - 1] == 2:
            exponent += sum(1 for x in I[m:] + J[m:] if x == 2)
    return CarPolynomial.from_ops(ops, -1 if exponent % 2 else 1)


def from_cuntz(y: Element) -> CarPolynomial:
    """Inverse of the standard embedding on the gauge-invariant part of O_2."""
    if y.d != 2:
        raise ValueError("the inverse map is defined on O_2")
    out = CarPolynomial(tol=y.tol)
    for (I, R), c in y:
        if len(I) != len(R):
            raise ValueError("element has a nonzero gauge degree")
        out = out + u1_monomial_to_car(I, R).scale(c)
    return out


def to_cuntz(x: CarPolynomial, r: Optional[Rfs] = None) -> Element:
    """Image of a CAR polynomial under the embedding attached to ``r`` (default ``SR1``)."""
    r = r or _SR1
    total: Dict = {}
    cache: Dict = {}
    for word, c in x:
        prod = Element.identity(r.d)
        for mode, dag in word:
            key = (mode, dag)
            if key not in cache:
                img = r.car_image(mode)
                cache[key] = adjoint(img) if dag else img
            prod = prod * cache[key]
        for k, v in prod:
            total[k] = total.get(k, 0) + c * v
    return Element(r.d, total, x.tol)


_SR1 = standard_rfs(1)


def reduction_check(p: int, r: int, n_max: int) -> CheckReport:
    """Check ``Psi_{r,p}(Phi_{SR_p}(a_n)) = Phi_{SR_r}(a_n)`` for ``n <= n_max``."""
    rep = CheckReport(f"reduction[{p}->{r}]")
    psi = psi_reduction(r, p)
    big, small = standard_rfs(p), standard_rfs(r)
    for n in range(1, n_max + 1):
        rep.record(equals(apply(psi, big.car_image(n)), small.car_image(n)), f"mode {n}")
    return rep


def seed_reduction_check(p: int) -> CheckReport:
    """``Psi_p(a^(p)_j) = zeta_1^(j-1)(s_{1;2})`` for every seed."""
    rep = CheckReport(f"seeds[{p}]")
    psi = homogeneous_embedding(2, p)
    big = standard_rfs(p)
    for j in range(1, p + 1):
        rep.record(equals(apply(psi, big.seeds[j - 1]), _SR1.car_image(j)), f"seed {j}")
    return rep
