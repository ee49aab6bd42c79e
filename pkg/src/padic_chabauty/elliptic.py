"""Group law on ``y^2 = c3 x^3 + c2 x^2 + c1 x + c0`` over any field.

Points are ``(x, y)`` pairs or ``None`` for the point at infinity.
Coordinates may be Fractions, QuadElements or PadicNumbers.
"""

from __future__ import annotations


class CubicCurve:
    def __init__(self, coefficients):
        c0, c1, c2, c3 = coefficients
        self.c0, self.c1, self.c2, self.c3 = c0, c1, c2, c3

    def rhs(self, x):
        return ((self.c3 * x + self.c2) * x + self.c1) * x + self.c0

    def contains(self, pt) -> bool:
        if pt is None:
            return True
        x, y = pt
        return y * y - self.rhs(x) == 0

    def neg(self, pt):
        return None if pt is None else (pt[0], -pt[1])

    def add(self, P, Q):
        if P is None:
            return Q
        if Q is None:
            return P
        x1, y1 = P
        x2, y2 = Q
        if x1 - x2 == 0:
            if y1 + y2 == 0:
                return None
            lam = (3 * self.c3 * x1 * x1 + 2 * self.c2 * x1 + self.c1) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam / self.c3 - self.c2 / self.c3 - x1 - x2
        y3 = -(y1 + lam * (x3 - x1))
        return (x3, y3)

    def multiply(self, n: int, P):
        if n < 0:
            return self.multiply(-n, self.neg(P))
        result, base = None, P
        while n:
            if n & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            n >>= 1
        return result
