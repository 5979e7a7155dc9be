"""Endomorphisms of the CAR algebra induced by Cuntz algebra endomorphisms.

A gauge-invariant endomorphism ``m`` of O_2 preserves the image of the
standard embedding, so ``Phi_SR1^{-1} o m o Phi_SR1`` is an endomorphism of
the CAR algebra.  :func:`restrict_endomorphism` computes it mode by mode
and :func:`closed_form_table` evaluates the same maps from their closed
forms and recurrences, independently of the Cuntz side.
"""

from __future__ import annotations

import re
import threading
from typing import Callable, Dict, List, Optional

import numpy as np

from .carpoly import CarPolynomial, K_product, car_anticommutator, car_equal, gamma_parity
from .morphisms import Morphism, apply, catalogue, psi_reduction, u_d_automorphism
from .rfs import CheckReport, from_cuntz, standard_rfs

__all__ = [
    "CarMorphism",
    "restrict_endomorphism",
    "closed_form_table",
    "closed_form_morphism",
    "induced_automorphism",
    "gamma_parity",
    "closed_form_names",
    "crosscheck",
]


class CarMorphism:
    """A map on CAR polynomials fixed by the images of the ``a_n``.

    Parameters
    ----------
    rule : callable
        ``n -> image of a_n``; results are memoized.
    name : str
    """

    def __init__(self, rule: Callable[[int], CarPolynomial], name: str = ""):
        self._rule = rule
        self.name = name
        self._memo: Dict[int, CarPolynomial] = {}
        self._star: Dict[int, CarPolynomial] = {}
        self._lock = threading.Lock()

    def __repr__(self):
        return f"CarMorphism({self.name!r})"

    def image(self, n: int) -> CarPolynomial:
        if n < 1:
            raise ValueError("modes start at 1")
        hit = self._memo.get(n)
        if hit is None:
            hit = self._rule(n)
            with self._lock:
                self._memo.setdefault(n, hit)
        return self._memo[n]

    def image_star(self, n: int) -> CarPolynomial:
        hit = self._star.get(n)
        if hit is None:
            hit = self.image(n).star
            with self._lock:
                self._star.setdefault(n, hit)
        return self._star[n]

    def apply_to(self, x: CarPolynomial) -> CarPolynomial:
        """Image of ``x``, substituting generator images into every word."""
        out = CarPolynomial(tol=x.tol)
        for word, c in x:
            prod = CarPolynomial.identity(c)
            for mode, dag in word:
                prod = prod * (self.image_star(mode) if dag else self.image(mode))
            out = out + prod
        return out

    __call__ = apply_to

    def compose(self, first: "CarMorphism", name: str = "") -> "CarMorphism":
        """``self o first``: ``first`` acts first."""
        return CarMorphism(lambda n: self.apply_to(first.image(n)), name or f"{self.name}o{first.name}")

    def check_car(self, n_max: int, tol: float = 0.0) -> CheckReport:
        """Anticommutation relations of the images of ``a_1, ..., a_{n_max}``."""
        rep = CheckReport(f"car[{self.name}]")
        one = CarPolynomial.identity()
        for m in range(1, n_max + 1):
            for n in range(m, n_max + 1):
                x, y = self.image(m), self.image(n)
                rep.record(car_equal(car_anticommutator(x, y), CarPolynomial(), tol), f"{{a{m}, a{n}}}")
                target = one if m == n else CarPolynomial()
                rep.record(car_equal(car_anticommutator(x, y.star), target, tol), f"{{a{m}, a{n}*}}")
        return rep

    def equals(self, other: "CarMorphism", n_max: int, tol: float = 0.0) -> bool:
        return all(car_equal(self.image(n), other.image(n), tol) for n in range(1, n_max + 1))


_SR1 = standard_rfs(1)


def restrict_endomorphism(m: Morphism, name: str = "") -> CarMorphism:
    """CAR endomorphism ``Phi_SR1^{-1} o m o Phi_SR1`` of a gauge-invariant ``m`` on O_2."""
    if m.source_d != 2 or m.target_d != 2:
        raise ValueError("restriction is defined for endomorphisms of O_2")
    if not m.is_gauge_invariant():
        raise ValueError(f"{m.name or 'endomorphism'} does not commute with the gauge action")
    return CarMorphism(lambda n: from_cuntz(apply(m, _SR1.car_image(n))), name or m.name)


# closed forms -----------------------------------------------------------------

_A, _AD, _K = CarPolynomial.a, CarPolynomial.adag, CarPolynomial.K


def _swap_mode(k: int) -> CarMorphism:
    """Bogoliubov map exchanging ``a_k`` and ``a_k^*``."""
    return CarMorphism(lambda n: _AD(n) if n == k else _A(n), f"swap{k}")


_ALPHA = CarMorphism(lambda n: _AD(n).scale((-1) ** (n - 1)), "alpha")


def _shift(x: CarPolynomial, by: int = 1) -> CarPolynomial:
    return x.map_modes(lambda m: m + by)


def _formal_first_mode_substitution(x: CarPolynomial) -> CarPolynomial:
    """Replace ``a_1 -> a_2``, ``a_1^* -> -a_2^*`` and ``a_k -> a_{k+1}`` term by term.

    This is not a homomorphism, so it is only meaningful on polynomials in
    which every word holds exactly one mode-1 operator; the map preserves
    the mode order, so normal-ordered words stay normal-ordered.
    """
    out: Dict = {}
    for word, c in x:
        firsts = [dag for mode, dag in word if mode == 1]
        if len(firsts) != 1:
            raise ValueError("formal substitution needs exactly one mode-1 operator per word")
        sign = -1 if firsts[0] else 1
        new = tuple((mode + 1, dag) for mode, dag in word)
        out[new] = out.get(new, 0) + sign * c
    return CarPolynomial(out, x.tol)


def _then_alpha(base: CarMorphism, name: str) -> CarMorphism:
    """``(phi o alpha)(a_n) = (-1)^(n-1) phi(a_n)^*``."""
    return CarMorphism(lambda n: base.image_star(n).scale((-1) ** (n - 1)), name)


def _build_second_order() -> Dict[str, CarMorphism]:
    t: Dict[str, CarMorphism] = {}
    t["id"] = CarMorphism(_A, "id")
    t["phi[1,2][3,4]"] = CarMorphism(_ALPHA.image, "phi[1,2][3,4]")
    t["phi[1,4][2,3]"] = CarMorphism(lambda n: _AD(1) if n == 1 else -_A(n), "phi[1,4][2,3]")
    binom = lambda n: (_AD(1) - _A(1)) * _A(n + 1)
    t["phi[1,2,3]"] = CarMorphism(binom, "phi[1,2,3]")
    t["phi[2,4,3]"] = CarMorphism(binom, "phi[2,4,3]")
    n1 = CarPolynomial.number(1)
    t["phi[2,3,4]"] = CarMorphism(
        lambda n: (_A(1) * _AD(1)) * _A(n + 1) + (n1 * _AD(n + 1)).scale((-1) ** n), "phi[2,3,4]"
    )
    p234 = t["phi[2,3,4]"]
    t["phi[1,2,4]"] = CarMorphism(
        lambda n: p234.image_star(n).scale((-1) ** ((n - 1) // 2))
        if n % 2
        else p234.image(n).scale((-1) ** (n // 2)),
        "phi[1,2,4]",
    )
    t["phi[2,3]"] = CarMorphism(lambda n: _K(1) * _A(n + 1), "phi[2,3]")
    t["phi[1,4]"] = CarMorphism(lambda n: (_K(1) * _AD(n + 1)).scale((-1) ** (n - 1)), "phi[1,4]")

    swap2 = _swap_mode(2)

    def phi24(n: int) -> CarPolynomial:
        if n == 1:
            return -(_A(1) * (_A(2) + _AD(2)))
        if n == 2:
            return -((_A(1) * _AD(1) * _A(2) + n1 * _AD(2)) * (_A(3) + _AD(3)))
        b1 = _shift(t["phi[2,4]"].image(n - 1))
        b2 = swap2.apply_to(b1)
        return _A(1) * _AD(1) * b1 - n1 * b2

    t["phi[2,4]"] = CarMorphism(phi24, "phi[2,4]")
    p24 = t["phi[2,4]"]
    t["phi[1,3]"] = CarMorphism(
        lambda n: p24.image(n).scale((-1) ** ((n - 1) // 2))
        if n % 2
        else p24.image_star(n).scale((-1) ** ((n - 2) // 2)),
        "phi[1,3]",
    )

    def phi12(n: int) -> CarPolynomial:
        if n == 1:
            return _AD(1) * _A(2) * _AD(2) + _A(1) * CarPolynomial.number(2)
        b = _formal_first_mode_substitution(t["phi[1,2]"].image(n - 1))
        return (_AD(1) + _A(1).scale((-1) ** n)) * b

    t["phi[1,2]"] = CarMorphism(phi12, "phi[1,2]")
    p12 = t["phi[1,2]"]
    # At n = 1 the generator images give phi[1,3,2,4](a_1) = phi[1,2](a_1)
    # directly; the adjoint rule only holds from n = 2 on.
    t["phi[1,3,2,4]"] = CarMorphism(
        lambda n: p12.image(1) if n == 1 else p12.image_star(n).scale((-1) ** n), "phi[1,3,2,4]"
    )

    for name, base in [
        ("phi[3,4]", "phi[1,2]"),
        ("phi[1,3][2,4]", "phi[1,4][2,3]"),
        ("phi[1,3,2]", "phi[2,3,4]"),
        ("phi[1,3,4]", "phi[1,2,3]"),
        ("phi[1,4,2]", "phi[2,4,3]"),
        ("phi[1,4,3]", "phi[1,2,4]"),
        ("phi[1,2,3,4]", "phi[1,3]"),
        ("phi[1,2,4,3]", "phi[1,4]"),
        ("phi[1,3,4,2]", "phi[2,3]"),
        ("phi[1,4,2,3]", "phi[1,3,2,4]"),
        ("phi[1,4,3,2]", "phi[2,4]"),
    ]:
        t[name] = _then_alpha(t[base], name)
    return t


def _phi_sigma_closed(p: int) -> CarMorphism:
    """Even-CAR endomorphism of ``phi_sigma_p`` from its recurrence in blocks of ``p`` modes."""

    def b(m: int, n: int) -> CarPolynomial:
        k = n - m * p
        if m == 1:
            return _A(k) * _AD(k) * _A(n) + CarPolynomial.number(k) * _AD(n)
        prev = b(m - 1, n)
        swapped = _swap_mode(n - (m - 1) * p).apply_to(prev)
        sign = 1 if m == 2 else -1
        return _A(k) * _AD(k) * prev + (CarPolynomial.number(k) * swapped).scale(sign)

    def rule(n: int) -> CarPolynomial:
        tail = _A(n + p) + _AD(n + p)
        if n <= p:
            return _A(n) * K_product(range(1, n + p)) * tail
        m = (n - 1) // p
        return b(m, n) * K_product(range(n - p, n + p)) * tail

    return CarMorphism(rule, f"phi_sigma({p})")


def _hat_phi_closed(k: int) -> CarMorphism:
    return CarMorphism(lambda n: _A(n) if n < k else (_AD(k) if n == k else -_A(n)), f"hat_phi({k})")


def _rho_power_closed(p: int) -> CarMorphism:
    return CarMorphism(lambda n: K_product(range(1, p + 1)) * _A(n + p), f"rho^{p}")


_SECOND: Optional[Dict[str, CarMorphism]] = None
_CLOSED_LOCK = threading.Lock()
_PARAM = re.compile(r"^(phi_sigma|hat_phi)\((\d+)\)$")


def closed_form_names(max_param: int = 3) -> List[str]:
    """Names accepted by :func:`closed_form_morphism` up to a parameter bound."""
    from .morphisms import SECOND_ORDER_CYCLES

    out = list(SECOND_ORDER_CYCLES)
    out += [f"phi_sigma({p})" for p in range(1, max_param + 1)]
    out += [f"hat_phi({k})" for k in range(1, max_param + 2)]
    out += [f"rho^{p}" for p in range(1, max_param + 1)]
    return out


def closed_form_morphism(name: str) -> CarMorphism:
    """Closed-form CAR endomorphism attached to a catalogue name.

    Supported: the 24 second-order names, ``rho``, ``alpha``, ``rho^p``,
    ``phi_sigma(p)`` and ``hat_phi(k)``.
    """
    global _SECOND
    key = name.replace(" ", "")
    with _CLOSED_LOCK:
        if _SECOND is None:
            _SECOND = _build_second_order()
    if key in _SECOND:
        return _SECOND[key]
    if key == "rho":
        return _SECOND["phi[2,3]"]
    if key == "alpha":
        return _SECOND["phi[1,2][3,4]"]
    if key.startswith("rho^"):
        return _rho_power_closed(int(key[4:]))
    m = _PARAM.match(key)
    if m:
        value = int(m.group(2))
        return _phi_sigma_closed(value) if m.group(1) == "phi_sigma" else _hat_phi_closed(value)
    raise KeyError(f"no closed form for {name!r}")


def closed_form_table(name: str, n: int) -> CarPolynomial:
    """Closed-form image of ``a_n`` under the CAR endomorphism named ``name``."""
    return closed_form_morphism(name).image(n)


def restrict_by_name(name: str) -> CarMorphism:
    return restrict_endomorphism(catalogue(name), name)


def crosscheck(name: str, n_max: int) -> CheckReport:
    """Compare the restriction with the closed form through two oracles.

    The first compares normal-ordered polynomials; the second maps both
    sides back into O_2 and compares there.
    """
    from .algebra import equals
    from .rfs import to_cuntz

    rep = CheckReport(f"crosscheck[{name}]")
    restricted = restrict_by_name(name)
    closed = closed_form_morphism(name)
    for n in range(1, n_max + 1):
        x, y = restricted.image(n), closed.image(n)
        rep.record(car_equal(x, y), f"a{n} (polynomial)")
        rep.record(equals(to_cuntz(x), to_cuntz(y)), f"a{n} (Cuntz)")
    return rep


# induced automorphisms ---------------------------------------------------------


def induced_automorphism(u, name: str = "tau_u") -> CarMorphism:
    """CAR automorphism ``Phi_SR_p^{-1} o alpha_u o Phi_SR_p`` for a unitary ``u`` of size ``2^p``.

    ``alpha_u(s_i) = sum_k s_k u[k, i]``.  Images are computed in O_{2^p},
    carried to O_2 by the homogeneous embedding that matches ``SR_p`` with
    ``SR_1`` and read off there.
    """
    u = np.asarray(u)
    size = u.shape[0]
    p = int(round(np.log2(size)))
    if 2**p != size or u.shape != (size, size):
        raise ValueError("the unitary must be square of size 2^p")
    alpha = u_d_automorphism(u)
    rfs = standard_rfs(p)
    down = psi_reduction(1, p) if p > 1 else None

    def rule(n: int) -> CarPolynomial:
        y = apply(alpha, rfs.car_image(n))
        if down is not None:
            y = apply(down, y)
        return from_cuntz(y)

    return CarMorphism(rule, name)


def is_even_image(m: CarMorphism, n_max: int) -> bool:
    """Whether every ``m(a_n)``, ``n <= n_max``, lies in the even subalgebra."""
    return all(gamma_parity(m.image(n)) == "even" for n in range(1, n_max + 1))
