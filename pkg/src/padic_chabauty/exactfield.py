"""Exact arithmetic in Q(sqrt d).

A :class:`QuadElement` carries its own ``d``; binary operations check that
both operands live in the same field.  Rationals mix in freely.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import DivisionByZero, FieldMismatch, InvalidInput


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    n = abs(n)
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def rational_sqrt(q) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


class QuadElement:
    """``a + b*sqrt(d)`` with rational a, b and squarefree ``d != 1``."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = -1):
        if not isinstance(d, int) or d == 1 or not is_squarefree(d):
            raise InvalidInput(f"d = {d} is not a squarefree integer other than 0 and 1")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = d

    def _coerce(self, other) -> QuadElement:
        if isinstance(other, QuadElement):
            if other.d != self.d:
                raise FieldMismatch(f"Q(sqrt {self.d}) and Q(sqrt {other.d}) differ")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(other, 0, self.d)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.a * o.a + self.d * self.b * o.b, self.a * o.b + self.b * o.a,
                           self.d)

    __rmul__ = __mul__

    def conj(self) -> QuadElement:
        return QuadElement(self.a, -self.b, self.d)

    def trace(self) -> Fraction:
        return 2 * self.a

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadElement:
        n = self.norm()
        if n == 0:
            raise DivisionByZero("inverse of zero")
        return QuadElement(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** -n
        result = QuadElement(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadElement):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return (self.a, self.b, self.d) == (other.a, other.b, other.d)
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b if self.b else 0, self.d if self.b else 0))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def is_rational(self) -> bool:
        return self.b == 0

    def sqrt(self) -> QuadElement | None:
        """A square root inside Q(sqrt d), or None."""
        if not self:
            return self
        if self.b == 0:
            r = rational_sqrt(self.a)
            if r is not None:
                return QuadElement(r, 0, self.d)
            r = rational_sqrt(self.a / self.d)
            return QuadElement(0, r, self.d) if r is not None else None
        n = rational_sqrt(self.norm())
        if n is None:
            return None
        for s in (n, -n):
            u = rational_sqrt((self.a + s) / 2)
            if u:
                root = QuadElement(u, self.b / (2 * u), self.d)
                if root * root == self:
                    return root
        return None

    def key(self) -> tuple:
        return (self.a, self.b)

    def __repr__(self):
        return f"QuadElement({self}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        coef = {1: "s", -1: "-s"}.get(self.b, f"{self.b}*s")
        if self.a == 0:
            return coef
        sign = "+" if self.b > 0 else "-"
        mag = "s" if abs(self.b) == 1 else f"{abs(self.b)}*s"
        return f"{self.a}{sign}{mag}"


_TERM = re.compile(r"\s*([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*(\*?\s*s)?\s*")


def parse(text: str, d: int) -> QuadElement:
    """Parse ``"a+b*s"`` (any order, ``s`` alone allowed) in Q(sqrt d)."""
    text = text.strip()
    if not text:
        raise InvalidInput("empty element")
    a, b = Fraction(0), Fraction(0)
    pos = 0
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise InvalidInput(f"cannot parse {text!r}")
        sign, num, root = m.groups()
        if num is None and root is None:
            raise InvalidInput(f"cannot parse {text!r}")
        if pos > 0 and not sign:
            raise InvalidInput(f"missing operator in {text!r}")
        value = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            value = -value
        if root:
            b += value
        else:
            a += value
        pos = m.end()
    return QuadElement(a, b, d)


def trace_norm(x: QuadElement) -> tuple[Fraction, Fraction]:
    return x.trace(), x.norm()
