"""Text syntax for Cuntz elements and CAR polynomials.

Grammar::

    expr    ::= term (('+' | '-') term)*
    term    ::= ['-'] factor+
    factor  ::= scalar | 's[' word? (';' word?)? ']' | 'a' INT ['*'] | 'K' INT
              | 'I' | NAME '(' expr ')' | '(' expr ')'
    scalar  ::= INT | INT '/' INT | DECIMAL, optionally followed by 'i', or 'i'

``s[1,2;2,1]`` is ``s_1 s_2 s_2^* s_1^*``: the part after the semicolon
lists the daggered factors in the order they appear.  ``NAME`` is any
morphism name understood by :func:`cuntzcar.morphisms.catalogue`; applied
to a CAR polynomial it acts through the standard embedding.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .algebra import Element
from .carpoly import CarPolynomial
from .scalars import Gaussian, fmt, is_negative

Value = Union[Element, CarPolynomial, int, Fraction, Gaussian, float, complex]


class ParseError(ValueError):
    """Syntax error with the offending position."""

    def __init__(self, message: str, text: str, pos: int):
        pointer = " " * pos + "^"
        super().__init__(f"{message} at position {pos}\n  {text}\n  {pointer}")
        self.pos = pos


_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9^]*(?:\[[\d,\s]+\])*(?:\([\d,\s]+\))?(?=\s*\()")
_NUMBER = re.compile(r"\d+(?:\.\d+)?(?:/\d+)?")


@dataclass
class Node:
    kind: str
    args: tuple
    pos: int = 0


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise ParseError(msg, self.text, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def parse(self) -> Node:
        node = self.expr()
        if self.peek():
            self.error("unexpected character")
        return node

    def expr(self) -> Node:
        start = self.pos
        terms = [(1, self.term())]
        while self.peek() in ("+", "-"):
            sign = 1 if self.text[self.pos] == "+" else -1
            self.pos += 1
            terms.append((sign, self.term()))
        return Node("sum", tuple(terms), start)

    def term(self) -> Node:
        start = self.pos
        sign = 1
        while self.peek() == "-":
            sign = -sign
            self.pos += 1
        factors = []
        while True:
            f = self.factor()
            if f is None:
                break
            factors.append(f)
        if not factors:
            self.error("expected a factor")
        node = Node("prod", tuple(factors), start)
        return node if sign == 1 else Node("neg", (node,), start)

    def _int(self) -> int:
        self.skip()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def _word(self, stop: str) -> Tuple[int, ...]:
        out = []
        if self.peek() in (stop, ";"):
            return ()
        out.append(self._int())
        while self.peek() == ",":
            self.pos += 1
            out.append(self._int())
        return tuple(out)

    def factor(self) -> Optional[Node]:
        ch = self.peek()
        start = self.pos
        if not ch or ch in "+-)":
            return None
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.expect(")")
            return Node("group", (inner,), start)
        if ch.isdigit() or (ch == "i" and not _NAME.match(self.text, self.pos)):
            return self.scalar()
        name = _NAME.match(self.text, self.pos)
        if name and not self.text.startswith("s[", self.pos):
            self.pos = name.end()
            self.expect("(")
            inner = self.expr()
            self.expect(")")
            return Node("apply", (name.group().replace(" ", ""), inner), start)
        if self.text.startswith("s[", self.pos):
            self.pos += 2
            left = self._word("]")
            right: Tuple[int, ...] = ()
            if self.peek() == ";":
                self.pos += 1
                right = self._word("]")
            self.expect("]")
            return Node("s", (left, right), start)
        if ch in "aK" and re.compile(r"[aK]\d").match(self.text, self.pos):
            self.pos += 1
            n = self._int()
            if ch == "K":
                return Node("K", (n,), start)
            dag = False
            if self.pos < len(self.text) and self.text[self.pos] == "*":
                dag = True
                self.pos += 1
            return Node("a", (n, dag), start)
        if ch == "I" and not re.compile(r"I[A-Za-z_0-9]").match(self.text, self.pos):
            self.pos += 1
            return Node("I", (), start)
        self.error(f"unexpected {ch!r}")

    def scalar(self) -> Node:
        start = self.pos
        m = _NUMBER.match(self.text, self.pos)
        if m:
            raw = m.group()
            self.pos = m.end()
            value: Value = Fraction(raw) if ("/" in raw or "." in raw) else int(raw)
            if isinstance(value, Fraction) and value.denominator == 1:
                value = value.numerator
        else:
            value = 1
        if self.pos < len(self.text) and self.text[self.pos] == "i":
            self.pos += 1
            value = Gaussian(0, value)
        return Node("scalar", (value,), start)


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def _walk(obj):
    """Every node below ``obj``, which may be a node or nested tuples."""
    if isinstance(obj, Node):
        yield obj
        obj = obj.args
    if isinstance(obj, tuple):
        for item in obj:
            if isinstance(item, (Node, tuple)):
                yield from _walk(item)


def _kinds(node: Node) -> set:
    kinds = set()
    for n in _walk(node):
        if n.kind == "s":
            kinds.add("cuntz")
        elif n.kind in ("a", "K"):
            kinds.add("car")
    return kinds


def _max_letter(node: Node) -> int:
    return max((max((*n.args[0], *n.args[1], 0)) for n in _walk(node) if n.kind == "s"), default=0)


def parse(text: str, d: Optional[int] = None) -> Union[Element, CarPolynomial]:
    """Parse ``text`` into an :class:`Element` or a :class:`CarPolynomial`.

    The kind is fixed by the generators used: ``s[...]`` gives O_d, with
    ``d`` defaulting to the largest letter (at least 2), while ``aN`` and
    ``KN`` give the CAR algebra.  An expression with neither is read in O_d.
    """
    ast = parse_ast(text)
    kinds = _kinds(ast)
    if kinds == {"cuntz", "car"}:
        raise ParseError("cannot mix s[...] and CAR generators", text, 0)
    if "car" in kinds:
        return _lift(_eval(ast, "car", 0, text), "car", 0)
    d = d or max(2, _max_letter(ast))
    return _lift(_eval(ast, "cuntz", d, text), "cuntz", d)


def _lift(v: Value, kind: str, d: int):
    if isinstance(v, (Element, CarPolynomial)):
        return v
    return CarPolynomial.identity(v) if kind == "car" else Element.identity(d, v)


def _eval(node: Node, kind: str, d: int, text: str) -> Value:
    k = node.kind
    if k == "sum":
        total: Value = 0
        for sign, t in node.args:
            v = _eval(t, kind, d, text)
            total = total + (v if sign == 1 else -v)
        return total
    if k == "neg":
        return -_eval(node.args[0], kind, d, text)
    if k == "prod":
        out: Value = 1
        for f in node.args:
            v = _eval(f, kind, d, text)
            if isinstance(out, (Element, CarPolynomial)) and isinstance(v, (Element, CarPolynomial)):
                out = out * v
            elif isinstance(out, (Element, CarPolynomial)):
                out = out.scale(v)
            elif isinstance(v, (Element, CarPolynomial)):
                out = v.scale(out)
            else:
                out = out * v
        return out
    if k == "group":
        return _eval(node.args[0], kind, d, text)
    if k == "scalar":
        return node.args[0]
    if k == "s":
        left, right = node.args
        try:
            return Element.mono(d, left, right)
        except ValueError as exc:
            raise ParseError(str(exc), text, node.pos) from None
    if k == "a":
        n, dag = node.args
        if n < 1:
            raise ParseError("modes start at 1", text, node.pos)
        return CarPolynomial.adag(n) if dag else CarPolynomial.a(n)
    if k == "K":
        return CarPolynomial.K(node.args[0])
    if k == "I":
        return CarPolynomial.identity() if kind == "car" else Element.identity(d)
    if k == "apply":
        from .morphisms import apply, catalogue

        name, inner = node.args
        try:
            m = catalogue(name)
        except (KeyError, ValueError) as exc:
            raise ParseError(f"unknown morphism {name!r}: {exc}", text, node.pos) from None
        arg = _lift(_eval(inner, kind, m.source_d if kind == "cuntz" else 0, text), kind, m.source_d)
        if kind == "car":
            from .rfs import from_cuntz, to_cuntz

            return from_cuntz(apply(m, to_cuntz(arg)))
        return apply(m, arg)
    raise ParseError(f"unknown node {k}", text, node.pos)


# printing -----------------------------------------------------------------


def _negative_imaginary(c) -> bool:
    if isinstance(c, Gaussian):
        return c.re == 0 and c.im < 0
    if isinstance(c, complex):
        return c.real == 0 and c.imag < 0
    return False


def _join(parts: List[Tuple[object, str]]) -> str:
    if not parts:
        return "0"
    out = []
    for k, (c, body) in enumerate(parts):
        neg = is_negative(c) or _negative_imaginary(c)
        mag = -c if neg else c
        if mag == 1:
            text = body
        else:
            text = f"{fmt(mag)} {body}"
        if k == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)


def _mono_text(I, R) -> str:
    if not I and not R:
        return "I"
    left = ",".join(map(str, I))
    if not R:
        return f"s[{left}]"
    return f"s[{left};{','.join(map(str, R))}]"


def format_element(x: Element) -> str:
    """Canonical text of an element: monomials sorted by length then lexicographically."""
    keys = sorted(x.terms, key=lambda k: (len(k[0]) + len(k[1]), k[0], k[1]))
    return _join([(x.terms[k], _mono_text(*k)) for k in keys])


def _car_word_text(word) -> str:
    if not word:
        return "I"
    return " ".join(f"a{m}{'*' if d else ''}" for m, d in word)


def _car_plain(x: CarPolynomial) -> str:
    keys = sorted(x.terms, key=lambda w: (len(w), w))
    return _join([(x.terms[k], _car_word_text(k)) for k in keys])


def format_car(x: CarPolynomial, factor_klein: bool = False) -> str:
    """Canonical text of a CAR polynomial.

    With ``factor_klein`` every mode ``l`` for which ``x = K_l y`` with ``y``
    free of mode ``l`` is pulled out as a prefix, so ``a4 - 2 a1* a1 a4``
    prints as ``K1 a4``.
    """
    if not factor_klein:
        return _car_plain(x)
    prefix = []
    rest = x
    for mode in sorted(x.modes()):
        y = CarPolynomial.K(mode) * rest
        if mode not in y.modes() and len(y) < len(rest):
            prefix.append(f"K{mode}")
            rest = y
    if not prefix:
        return _car_plain(x)
    body = _car_plain(rest)
    if len(rest) > 1 or body.startswith("-"):
        body = f"({body})"
    return " ".join(prefix + ([body] if body != "I" else []))


def format_value(x, factor_klein: bool = False) -> str:
    if isinstance(x, Element):
        return format_element(x)
    if isinstance(x, CarPolynomial):
        return format_car(x, factor_klein)
    return fmt(x)
