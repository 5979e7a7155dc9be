"""Formal polynomials in fermion operators ``a_n`` and ``a_n^*``.

A :class:`CarPolynomial` is a sum of normal-ordered words: all creation
operators first with ascending modes, then all annihilation operators with
ascending modes.  Products are brought to this form with the canonical
anticommutation relations, so equal polynomials have equal term maps.

Normal ordering of a raw operator string proceeds in three steps:

1. a stable sort by mode, each exchange of distinct modes costing a sign;
2. the product on each mode is evaluated as a 2x2 matrix (a single mode is
   a copy of ``M_2``) and expanded over ``I``, ``a``, ``a^*`` and ``a^* a``;
3. creation operators are moved in front of annihilation operators, again
   with one sign per crossing.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from .scalars import coerce, conj, is_zero

Op = Tuple[int, bool]  # (mode, is_creation)
Word = Tuple[Op, ...]

_A = np.array([[0, 1], [0, 0]], dtype=object)
_ADAG = np.array([[0, 0], [1, 0]], dtype=object)
_ONE = np.array([[1, 0], [0, 1]], dtype=object)


def _sort_sign(ops: Sequence[Op]) -> int:
    """Sign of the stable sort by mode (one factor of -1 per crossing)."""
    sign = 1
    n = len(ops)
    for x in range(n):
        for y in range(x + 1, n):
            if ops[x][0] > ops[y][0]:
                sign = -sign
    return sign


def _mode_expansion(flags: Sequence[bool]) -> List[Tuple[Tuple[bool, ...], int]]:
    """Expand a single-mode product over the basis ``I, a, a^*, a^* a``."""
    m = _ONE
    for dag in flags:
        m = m.dot(_ADAG if dag else _A)
    out = []
    if m[0, 0] != 0:
        out.append(((), m[0, 0]))
    if m[0, 1] != 0:
        out.append(((False,), m[0, 1]))
    if m[1, 0] != 0:
        out.append(((True,), m[1, 0]))
    n_coeff = m[1, 1] - m[0, 0]
    if n_coeff != 0:
        out.append(((True, False), n_coeff))
    return out


@lru_cache(maxsize=1 << 16)
def normal_order(ops: Word) -> Tuple[Tuple[Word, int], ...]:
    """Normal-ordered expansion of a raw operator string with integer coefficients."""
    sign = _sort_sign(ops)
    ordered = sorted(ops, key=lambda o: o[0])
    groups: List[Tuple[int, List[bool]]] = []
    for mode, dag in ordered:
        if groups and groups[-1][0] == mode:
            groups[-1][1].append(dag)
        else:
            groups.append((mode, [dag]))
    partial: List[Tuple[List[Op], int]] = [([], sign)]
    for mode, flags in groups:
        nxt = []
        for choice, c in _mode_expansion(flags):
            for word, w in partial:
                nxt.append((word + [(mode, f) for f in choice], w * c))
        partial = nxt
        if not partial:
            return ()
    result: Dict[Word, int] = {}
    for word, c in partial:
        crossings = 0
        seen_annihilators = 0
        for _, dag in word:
            if dag:
                crossings += seen_annihilators
            else:
                seen_annihilators += 1
        if crossings % 2:
            c = -c
        key = tuple(o for o in word if o[1]) + tuple(o for o in word if not o[1])
        result[key] = result.get(key, 0) + c
    return tuple((k, v) for k, v in result.items() if v != 0)


class CarPolynomial:
    """Finite linear combination of normal-ordered fermion words."""

    __slots__ = ("terms", "tol")

    def __init__(self, terms: Dict[Word, object] = None, tol: float = 0.0):
        self.tol = tol
        clean = {}
        for k, c in (terms or {}).items():
            c = coerce(c)
            if not is_zero(c, tol):
                clean[k] = c
        self.terms = clean

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls) -> "CarPolynomial":
        return cls()

    @classmethod
    def identity(cls, c=1) -> "CarPolynomial":
        return cls({(): c})

    @classmethod
    def a(cls, n: int) -> "CarPolynomial":
        return cls({((n, False),): 1})

    @classmethod
    def adag(cls, n: int) -> "CarPolynomial":
        return cls({((n, True),): 1})

    @classmethod
    def number(cls, n: int) -> "CarPolynomial":
        return cls({((n, True), (n, False)): 1})

    @classmethod
    def K(cls, n: int) -> "CarPolynomial":
        """Klein operator ``K_n = I - 2 a_n^* a_n``."""
        return cls({(): 1, ((n, True), (n, False)): -2})

    @classmethod
    def from_ops(cls, ops: Iterable[Op], c=1) -> "CarPolynomial":
        """Normal-ordered form of the raw product of ``ops``."""
        out: Dict[Word, object] = {}
        for k, v in normal_order(tuple(ops)):
            out[k] = out.get(k, 0) + c * v
        return cls(out)

    # protocol -----------------------------------------------------------
    def __iter__(self) -> Iterator[Tuple[Word, object]]:
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .parse import format_car

        return f"CarPolynomial({format_car(self)!r})"

    def __add__(self, other):
        if not isinstance(other, CarPolynomial):
            other = CarPolynomial.identity(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return CarPolynomial(out, max(self.tol, other.tol))

    __radd__ = __add__

    def __neg__(self):
        return CarPolynomial({k: -c for k, c in self.terms.items()}, self.tol)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "CarPolynomial":
        return CarPolynomial({k: c * v for k, v in self.terms.items()}, self.tol)

    def __mul__(self, other):
        if not isinstance(other, CarPolynomial):
            return self.scale(other)
        return car_mul(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    @property
    def star(self) -> "CarPolynomial":
        return car_adjoint(self)

    def adjoint(self) -> "CarPolynomial":
        return car_adjoint(self)

    def __eq__(self, other):
        if isinstance(other, (int, float, complex)) or hasattr(other, "conjugate"):
            other = CarPolynomial.identity(other)
        if not isinstance(other, CarPolynomial):
            return NotImplemented
        return car_equal(self, other)

    __hash__ = None

    def modes(self) -> set:
        return {m for word in self.terms for m, _ in word}

    def max_mode(self) -> int:
        return max(self.modes(), default=0)

    def map_modes(self, f) -> "CarPolynomial":
        """Relabel modes with an order-preserving map ``f``."""
        out = CarPolynomial()
        for word, c in self.terms.items():
            out = out + CarPolynomial.from_ops([(f(m), d) for m, d in word], c)
        return out


def car_mul(x: CarPolynomial, y: CarPolynomial) -> CarPolynomial:
    out: Dict[Word, object] = {}
    for u, cu in x.terms.items():
        for v, cv in y.terms.items():
            for w, s in normal_order(u + v):
                out[w] = out.get(w, 0) + cu * cv * s
    return CarPolynomial(out, max(x.tol, y.tol))


def car_adjoint(x: CarPolynomial) -> CarPolynomial:
    out: Dict[Word, object] = {}
    for word, c in x.terms.items():
        raw = tuple((m, not d) for m, d in reversed(word))
        for w, s in normal_order(raw):
            out[w] = out.get(w, 0) + conj(c) * s
    return CarPolynomial(out, x.tol)


def car_normal_form(x: CarPolynomial) -> CarPolynomial:
    """Canonical form; polynomials are kept normal-ordered so this re-sorts only."""
    out = CarPolynomial()
    for word, c in x.terms.items():
        out = out + CarPolynomial.from_ops(word, c)
    return out


def car_equal(x: CarPolynomial, y: CarPolynomial, tol: float = 0.0) -> bool:
    diff = x - y
    t = tol or diff.tol
    return all(is_zero(c, t) for c in diff.terms.values())


def car_anticommutator(x: CarPolynomial, y: CarPolynomial) -> CarPolynomial:
    return x * y + y * x


def car_commutator(x: CarPolynomial, y: CarPolynomial) -> CarPolynomial:
    return x * y - y * x


def gamma_parity(x: CarPolynomial) -> str:
    """``even``, ``odd`` or ``mixed`` under ``a_n -> -a_n``; zero counts as even."""
    parities = {len(w) % 2 for w in x.terms}
    if parities <= {0}:
        return "even"
    if parities == {1}:
        return "odd"
    return "mixed"


def K_product(modes: Iterable[int]) -> CarPolynomial:
    """``prod K_l`` over ``modes``."""
    out = CarPolynomial.identity()
    for m in modes:
        out = out * CarPolynomial.K(m)
    return out


def max_abs_coeff(x: CarPolynomial) -> float:
    return max((abs(complex(c)) for c in x.terms.values()), default=0.0)
