"""Symbolic arithmetic in the Cuntz algebra O_d.

Every element is a finite linear combination of monomials
``s_I (s_J)^*`` with words ``I`` and ``J`` over ``{1, ..., d}``.  A monomial
is stored as the pair ``(I, R)`` where ``R`` is the daggered part read left
to right, so ``(I, R)`` means ``s_I s_{R[0]}^* s_{R[1]}^* ...`` which equals
``s_I (s_{rev R})^*``.  Products reduce with ``s_i^* s_j = delta_ij``; the
remaining relation ``sum_i s_i s_i^* = 1`` is used by :func:`equals` through
flattening to a common right depth.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from .scalars import coerce, conj, is_zero

Word = Tuple[int, ...]
Monomial = Tuple[Word, Word]
Scalar = object

_NAIVE_LIMIT = 256


@lru_cache(maxsize=1 << 18)
def mono_mul(a: Monomial, b: Monomial) -> Optional[Monomial]:
    """Product of two monomials, ``None`` when it vanishes."""
    I, R = a
    K, L = b
    r, k = len(R), len(K)
    for t in range(min(r, k)):
        if R[r - 1 - t] != K[t]:
            return None
    if r >= k:
        return (I, R[: r - k] + L)
    return (I + K[r:], L)


def _check_word(w: Iterable[int], d: int) -> Word:
    w = tuple(int(x) for x in w)
    for x in w:
        if not 1 <= x <= d:
            raise ValueError(f"letter {x} outside 1..{d}")
    return w


class Element:
    """Element of O_d given by a sparse dictionary of monomials."""

    __slots__ = ("d", "terms", "tol")

    def __init__(self, d: int, terms: Optional[Dict[Monomial, Scalar]] = None, tol: float = 0.0):
        if d < 2:
            raise ValueError("O_d needs d >= 2")
        self.d = d
        self.tol = tol
        clean = {}
        if terms:
            for key, c in terms.items():
                c = coerce(c)
                if not is_zero(c, tol):
                    clean[key] = c
        self.terms = clean

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, d: int) -> "Element":
        return cls(d)

    @classmethod
    def identity(cls, d: int, coeff=1) -> "Element":
        return cls(d, {((), ()): coeff})

    @classmethod
    def gen(cls, d: int, i: int) -> "Element":
        return cls(d, {((i,), ()): 1}) if 1 <= i <= d else _bad_letter(i, d)

    @classmethod
    def mono(cls, d: int, left: Sequence[int] = (), right: Sequence[int] = (), coeff=1) -> "Element":
        """``coeff * s_{left;right}`` with ``right`` in display order.

        ``Element.mono(2, (1, 3), (2, 1))`` is ``s_1 s_3 s_2^* s_1^*``.
        """
        left = _check_word(left, d)
        right = _check_word(right, d)
        return cls(d, {(left, right): coeff})

    @classmethod
    def word(cls, d: int, w: Sequence[int], coeff=1) -> "Element":
        """The isometry ``s_w = s_{w_1} ... s_{w_n}``."""
        return cls(d, {(_check_word(w, d), ()): coeff})

    # basic protocol -----------------------------------------------------
    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self.terms.items())

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .parse import format_element

        return f"Element(d={self.d}, {format_element(self)!r})"

    def _tol(self, other: "Element") -> float:
        return max(self.tol, other.tol)

    def _same_d(self, other: "Element"):
        if self.d != other.d:
            raise ValueError(f"mixing O_{self.d} and O_{other.d}")

    def __add__(self, other):
        if not isinstance(other, Element):
            other = Element.identity(self.d, other)
        self._same_d(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return Element(self.d, out, self._tol(other))

    __radd__ = __add__

    def __neg__(self):
        return Element(self.d, {k: -c for k, c in self.terms.items()}, self.tol)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Element":
        return Element(self.d, {k: c * v for k, v in self.terms.items()}, self.tol)

    def __mul__(self, other):
        if not isinstance(other, Element):
            return self.scale(other)
        return mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def adjoint(self) -> "Element":
        return adjoint(self)

    @property
    def star(self) -> "Element":
        return adjoint(self)

    def __eq__(self, other):
        if isinstance(other, Element):
            return equals(self, other)
        if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
            return equals(self, Element.identity(self.d, other))
        return NotImplemented

    __hash__ = None

    def max_right_depth(self) -> int:
        return max((len(R) for (_, R) in self.terms), default=0)

    def max_left_depth(self) -> int:
        return max((len(I) for (I, _) in self.terms), default=0)


def _bad_letter(i, d):
    raise ValueError(f"letter {i} outside 1..{d}")


def _index_by_left(y: Element):
    exact: Dict[Word, list] = {}
    longer: Dict[Tuple[int, Word], list] = {}
    for (K, L), c in y.terms.items():
        exact.setdefault(K, []).append((K, L, c))
        for r in range(len(K)):
            longer.setdefault((r, K[:r]), []).append((K, L, c))
    return exact, longer


def mul(x: Element, y: Element) -> Element:
    """Product ``x y`` reduced with ``s_i^* s_j = delta_ij``."""
    x._same_d(y)
    out: Dict[Monomial, Scalar] = {}
    if len(x.terms) * len(y.terms) <= _NAIVE_LIMIT:
        for a, ca in x.terms.items():
            for b, cb in y.terms.items():
                m = mono_mul(a, b)
                if m is not None:
                    out[m] = out.get(m, 0) + ca * cb
        return Element(x.d, out, x._tol(y))
    exact, longer = _index_by_left(y)
    for (I, R), ca in x.terms.items():
        W = R[::-1]
        r = len(W)
        for ell in range(r + 1):
            for K, L, cb in exact.get(W[:ell], ()):
                m = (I, R[: r - ell] + L)
                out[m] = out.get(m, 0) + ca * cb
        for K, L, cb in longer.get((r, W), ()):
            m = (I + K[r:], L)
            out[m] = out.get(m, 0) + ca * cb
    return Element(x.d, out, x._tol(y))


def adjoint(x: Element) -> Element:
    """Involution: ``(I, R) -> (rev R, rev I)`` with conjugated coefficient."""
    return Element(x.d, {(R[::-1], I[::-1]): conj(c) for (I, R), c in x.terms.items()}, x.tol)


def words(d: int, n: int) -> Iterator[Word]:
    """All words of length ``n`` over ``1..d`` in lexicographic order."""
    return itertools.product(range(1, d + 1), repeat=n)


def flatten(x: Element, depth: int) -> Element:
    """Rewrite ``x`` so every monomial has daggered length ``depth``.

    Uses ``s_J^* = sum_W s_W s_W^* s_J^*`` which is the relation
    ``sum_i s_i s_i^* = 1`` applied ``depth - len(J)`` times.
    """
    if depth < x.max_right_depth():
        raise ValueError("flatten depth below the current right depth")
    out: Dict[Monomial, Scalar] = {}
    for (I, R), c in x.terms.items():
        extra = depth - len(R)
        if extra == 0:
            out[(I, R)] = out.get((I, R), 0) + c
            continue
        for W in words(x.d, extra):
            key = (I + W, W[::-1] + R)
            out[key] = out.get(key, 0) + c
    return Element(x.d, out, x.tol)


def _contract_level(terms: Dict[Monomial, Scalar], d: int, depth: int, tol: float) -> Dict[Monomial, Scalar]:
    """Merge complete families ``sum_i c s_{I'i} s_i^* s_{R'}^*`` at right depth ``depth`` into ``c s_{I';R'}``."""
    groups: Dict[Monomial, Dict[int, Scalar]] = {}
    for (I, R), c in terms.items():
        if len(R) == depth and I and R and I[-1] == R[0]:
            groups.setdefault((I[:-1], R[1:]), {})[I[-1]] = c
    out = dict(terms)
    for (I, R), members in groups.items():
        if len(members) != d:
            continue
        ref = members[1]
        if not all(is_zero(members[i] - ref, tol) for i in range(2, d + 1)):
            continue
        for i in range(1, d + 1):
            del out[(I + (i,), (i,) + R)]
        out[(I, R)] = out.get((I, R), 0) + ref
    return out


def canonical_form(x: Element) -> Element:
    """Unique shortest representative of ``x``.

    Every gauge-homogeneous part is flattened to its deepest right word, a
    representation that is unique, and complete families are then merged
    back level by level, so equal elements give identical term maps.
    """
    out: Dict[Monomial, Scalar] = {}
    for part in gauge_degree_split(x).values():
        depth = part.max_right_depth()
        terms = flatten(part, depth).terms
        for level in range(depth, 0, -1):
            terms = _contract_level(terms, x.d, level, x.tol)
        for k, c in terms.items():
            out[k] = out.get(k, 0) + c
    return Element(x.d, out, x.tol)


def gauge_degree_split(x: Element) -> Dict[int, Element]:
    """Split ``x`` into homogeneous parts for the gauge action ``|I| - |J|``."""
    parts: Dict[int, Dict[Monomial, Scalar]] = {}
    for (I, R), c in x.terms.items():
        parts.setdefault(len(I) - len(R), {})[(I, R)] = c
    return {k: Element(x.d, v, x.tol) for k, v in sorted(parts.items())}


def is_zero_element(x: Element) -> bool:
    """Decide ``x == 0`` in O_d.

    Each gauge-homogeneous part is flattened to its deepest right word.
    Distinct monomials of equal right depth inside one degree are linearly
    independent, so the flattened part is zero exactly when it is empty.
    """
    if not x.terms:
        return True
    for part in gauge_degree_split(x).values():
        if flatten(part, part.max_right_depth()).terms:
            return False
    return True


def equals(x: Element, y: Element) -> bool:
    """Decide ``x == y`` in O_d."""
    return is_zero_element(x - y)


def gen_family(d: int):
    """The canonical generators ``s_1, ..., s_d`` of O_d."""
    return [Element.gen(d, i) for i in range(1, d + 1)]


def check_cuntz_family(S: Sequence[Element], d_prime: Optional[int] = None) -> bool:
    """True when ``S`` satisfies the Cuntz relations of O_{d'}."""
    if d_prime is not None and len(S) != d_prime:
        return False
    if not S:
        return False
    d = S[0].d
    one = Element.identity(d)
    zero = Element.zero(d)
    adj = [adjoint(s) for s in S]
    for i, si in enumerate(adj):
        for j, sj in enumerate(S):
            if not equals(si * sj, one if i == j else zero):
                return False
    total = zero
    for s, sa in zip(S, adj):
        total = total + s * sa
    return equals(total, one)
