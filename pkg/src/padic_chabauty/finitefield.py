"""Small finite fields F_{p^k} for point counting.

Elements are tuples of k integers mod p (coefficients of 1, a, a^2, ...)
where ``a`` is a root of a fixed monic irreducible polynomial.  Only the
handful of operations needed to evaluate a polynomial and test squares
are provided.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache

from .errors import DivisionByZero


def _poly_mulmod(a, b, modulus, p):
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce by the monic modulus (constant term first)
    for n in range(len(prod) - 1, k - 1, -1):
        c = prod[n]
        if c:
            for i in range(k):
                prod[n - k + i] = (prod[n - k + i] - c * modulus[i]) % p
            prod[n] = 0
    return tuple(prod[:k])


def _has_root_free_factorization(modulus, p) -> bool:
    """Irreducibility test by brute force over all monic factors of degree <= k/2."""
    k = len(modulus) - 1
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            divisor = list(tail) + [1]
            if _divides(divisor, modulus, p):
                return False
    return True


def _divides(divisor, poly, p) -> bool:
    rem = list(poly)
    dd = len(divisor) - 1
    for n in range(len(rem) - 1, dd - 1, -1):
        c = rem[n]
        if c:
            for i in range(dd + 1):
                rem[n - dd + i] = (rem[n - dd + i] - c * divisor[i]) % p
    return not any(rem[:dd])


@lru_cache(maxsize=None)
def irreducible_modulus(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically first monic irreducible polynomial of degree k over F_p."""
    if k == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=k):
        if tail[0] == 0:
            continue
        modulus = tuple(tail) + (1,)
        if _has_root_free_factorization(modulus, p):
            return modulus
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    def __init__(self, p: int, k: int = 1):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = irreducible_modulus(p, k)

    def __repr__(self) -> str:
        return f"FiniteField({self.p}^{self.k})"

    def elements(self):
        for digits in itertools.product(range(self.p), repeat=self.k):
            yield tuple(reversed(digits))

    def zero(self):
        return (0,) * self.k

    def one(self):
        return (1,) + (0,) * (self.k - 1)

    def from_rational(self, value) -> tuple[int, ...]:
        value = Fraction(value)
        if value.denominator % self.p == 0:
            raise DivisionByZero(f"{value} is not p-integral")
        c = value.numerator * pow(value.denominator, -1, self.p) % self.p
        return (c,) + (0,) * (self.k - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return (a[0] * b[0] % self.p,)
        return _poly_mulmod(a, b, self.modulus, self.p)

    def pow(self, a, n: int):
        result, base = self.one(), a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return not any(a)

    def is_square(self, a) -> bool:
        return self.is_zero(a) or self.pow(a, (self.q - 1) // 2) == self.one()

    def evaluate(self, coeffs, x):
        """Evaluate a polynomial with F_p-coefficients (constant first) at x."""
        acc = self.zero()
        for c in reversed(coeffs):
            acc = self.add(self.mul(acc, x), c)
        return acc

    def square_roots(self) -> dict:
        roots: dict = {}
        for y in self.elements():
            roots.setdefault(self.mul(y, y), []).append(y)
        return roots

    def format(self, a) -> str:
        if self.k == 1:
            return str(a[0])
        terms = []
        for i, c in enumerate(a):
            if c:
                mono = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
                terms.append(f"{c}{'*' + mono if mono else ''}" if c != 1 or not mono else mono)
        return " + ".join(terms) or "0"
