"""Dense univariate polynomials with exact rational coefficients.

A polynomial is a list of ``Fraction`` values, constant term first, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from math import comb


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def make(values):
    return trim(Fraction(v) for v in values)


def degree(a) -> int:
    return len(a) - 1


def add(a, b):
    n = max(len(a), len(b))
    return trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def sub(a, b):
    return add(a, scale(b, -1))


def scale(a, c):
    return trim(x * c for x in a)


def mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def power(a, n: int):
    result = [Fraction(1)]
    for _ in range(n):
        result = mul(result, a)
    return result


def derivative(a):
    return trim(k * a[k] for k in range(1, len(a)))


def evaluate(a, x):
    """Horner evaluation; ``x`` may be any ring element that mixes with Fraction."""
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def divmod_poly(a, b):
    a = list(a)
    db, lead = degree(b), b[-1]
    q = [Fraction(0)] * max(len(a) - db, 0)
    for n in range(len(a) - 1, db - 1, -1):
        c = a[n] / lead
        if c:
            q[n - db] = c
            for i in range(db + 1):
                a[n - db + i] -= c * b[i]
    return trim(q), trim(a[:db])


def taylor_shift(a, r):
    """Coefficients of ``a(x + r)``."""
    r = Fraction(r)
    out = [Fraction(0)] * len(a)
    for n, c in enumerate(a):
        for j in range(n + 1):
            out[j] += c * comb(n, j) * r ** (n - j)
    return trim(out)


def xgcd(a, b):
    """Return ``(g, u, v)`` with ``u*a + v*b = g`` and ``g`` monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_poly(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    lead = r0[-1]
    return scale(r0, 1 / lead), scale(s0, 1 / lead), scale(t0, 1 / lead)


def discriminant(a) -> Fraction:
    """Discriminant via the resultant of ``a`` and ``a'``."""
    n = degree(a)
    lead = a[-1]
    res = resultant(a, derivative(a))
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * res / lead


def resultant(a, b) -> Fraction:
    """Resultant by the Euclidean algorithm over Q."""
    a, b = trim(a), trim(b)
    if not a or not b:
        return Fraction(0)
    result = Fraction(1)
    while degree(b) > 0:
        da, db = degree(a), degree(b)
        _, r = divmod_poly(a, b)
        if not r:
            return Fraction(0)
        dr = degree(r)
        result *= (-1) ** (da * db) * b[-1] ** (da - dr)
        a, b = b, r
    return result * b[-1] ** degree(a)


def to_string(a, var: str = "x") -> str:
    if not a:
        return "0"
    parts = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if c == 0:
            continue
        mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        coef = str(mag) if (mag != 1 or not mono) else ""
        body = coef + ("*" if coef and mono else "") + mono
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
