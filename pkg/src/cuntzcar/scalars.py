"""Scalar coefficients for exact and floating point arithmetic.

Exact coefficients are ``int``, ``fractions.Fraction`` or :class:`Gaussian`
(a complex number with rational parts).  The floating backend stores
everything as ``complex``.  The backend is chosen with the environment
variable ``CUNTZCAR_BACKEND`` (``exact`` or ``float``).
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from numbers import Number
from typing import Union

FLOAT_TOL = 1e-12
BACKEND_ENV = "CUNTZCAR_BACKEND"


class Gaussian:
    """Complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, Gaussian):
            return other
        if isinstance(other, (int, Fraction)):
            return Gaussian(other, 0)
        return None

    def _norm(self):
        if self.im == 0:
            return self.re.numerator if self.re.denominator == 1 else self.re
        return self

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) + other
        return Gaussian(self.re + o.re, self.im + o.im)._norm()

    __radd__ = __add__

    def __neg__(self):
        return Gaussian(-self.re, -self.im)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) * other
        return Gaussian(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)._norm()

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) / other
        den = o.re * o.re + o.im * o.im
        return (self * Gaussian(o.re / den, -o.im / den))

    def __rtruediv__(self, other):
        return Gaussian(other) / self

    def conjugate(self):
        return Gaussian(self.re, -self.im)

    def __abs__(self):
        return math.hypot(self.re, self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            try:
                return complex(self) == complex(other)
            except TypeError:
                return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Gaussian({self.re}, {self.im})"


Scalar = Union[int, Fraction, Gaussian, float, complex]

I_UNIT = Gaussian(0, 1)


def backend() -> str:
    """Name of the active scalar backend."""
    name = os.environ.get(BACKEND_ENV, "exact").strip().lower()
    if name not in ("exact", "float"):
        raise ValueError(f"unknown scalar backend {name!r}; use 'exact' or 'float'")
    return name


def coerce(c):
    """Normalise a coefficient for the active backend."""
    if backend() == "float":
        return complex(c)
    if isinstance(c, Gaussian):
        return c._norm()
    if isinstance(c, bool):
        return int(c)
    return c


def is_zero(c, tol: float = 0.0) -> bool:
    """Zero test: exact for rational data, ``abs(c) <= tol`` otherwise."""
    if isinstance(c, (float, complex)):
        return abs(c) <= (tol or FLOAT_TOL)
    if tol:
        return abs(c) <= tol
    return c == 0


def conj(c):
    if isinstance(c, (int, Fraction, float)):
        return c
    return c.conjugate()


def is_exact(c) -> bool:
    return isinstance(c, (int, Fraction, Gaussian))


def fmt(c) -> str:
    """Text form of a coefficient, readable back by the expression parser."""
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, int):
        return str(c)
    if isinstance(c, Fraction):
        return str(c)
    if isinstance(c, float):
        return repr(c)
    if isinstance(c, Gaussian):
        if c.re == 0:
            return f"{c.im}i"
        sign = "+" if c.im > 0 else "-"
        return f"({c.re}{sign}{abs(c.im)}i)"
    if isinstance(c, complex):
        if c.imag == 0:
            return repr(c.real)
        if c.real == 0:
            return f"{c.imag!r}i"
        sign = "+" if c.imag > 0 else "-"
        return f"({c.real!r}{sign}{abs(c.imag)!r}i)"
    if isinstance(c, Number):
        return str(c)
    raise TypeError(f"unsupported scalar {c!r}")


def is_negative(c) -> bool:
    """True when the coefficient is a negative real number."""
    if isinstance(c, (int, Fraction, float)):
        return c < 0
    if isinstance(c, Gaussian):
        return c.im == 0 and c.re < 0
    if isinstance(c, complex):
        return c.imag == 0 and c.real < 0
    return False
