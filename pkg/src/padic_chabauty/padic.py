"""Capped absolute-precision arithmetic in Q_p.

A :class:`PadicNumber` is ``p^v * u + O(p^N)`` with ``u`` a unit known modulo
``p^(N - v)``.  Every operation returns exactly the precision guaranteed by
the usual propagation rules; nothing is padded.  Values mix freely with
``int`` and ``Fraction`` operands, which are treated as exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from .errors import (
    DivisionByZero,
    InvalidInput,
    InvalidPrime,
    NoSquareRoot,
    NotAUnit,
    PrecisionExhausted,
    PrimeMismatch,
)

__all__ = [
    "PadicNumber",
    "from_rational",
    "hensel_sqrt",
    "teichmuller",
    "valuation",
    "is_odd_prime",
    "rational_reconstruction",
]


@lru_cache(maxsize=None)
def is_odd_prime(p) -> bool:
    if not isinstance(p, int) or isinstance(p, bool) or p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def check_prime(p) -> int:
    if not is_odd_prime(p):
        raise InvalidPrime(f"{p!r} is not an odd prime")
    return p


def valuation(n, p) -> int | float:
    """p-adic valuation of an int or Fraction; ``inf`` for zero."""
    n = Fraction(n)
    if n == 0:
        return float("inf")
    v = 0
    num, den = n.numerator, n.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


class PadicNumber:
    """An element of Q_p known modulo ``p^precision``.

    Attributes are read-only by convention: ``p``, ``valuation``, ``unit``
    and ``precision``.  The certified zero ``O(p^N)`` has ``unit == 0`` and
    ``valuation == N``.
    """

    __slots__ = ("p", "valuation", "unit", "precision")

    def __init__(self, p: int, valuation: int, unit: int, precision: int):
        if unit == 0 or valuation >= precision:
            self.p, self.valuation, self.unit, self.precision = p, precision, 0, precision
            return
        while unit % p == 0:
            unit //= p
            valuation += 1
        if valuation >= precision:
            self.p, self.valuation, self.unit, self.precision = p, precision, 0, precision
            return
        self.p = p
        self.valuation = valuation
        self.unit = unit % p ** (precision - valuation)
        self.precision = precision

    # -- construction -----------------------------------------------------

    @classmethod
    def zero(cls, p: int, precision: int) -> PadicNumber:
        return cls(p, precision, 0, precision)

    @classmethod
    def from_rational(cls, value, p: int, precision: int) -> PadicNumber:
        value = Fraction(value)
        if value == 0:
            return cls.zero(p, precision)
        v = valuation(value, p)
        if v >= precision:
            return cls.zero(p, precision)
        num = value.numerator // p ** max(v, 0)
        den = value.denominator // p ** max(-v, 0)
        mod = p ** (precision - v)
        return cls(p, v, num * pow(den, -1, mod) % mod, precision)

    def _coerce(self, other) -> PadicNumber:
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise PrimeMismatch(f"primes {self.p} and {other.p} differ")
            return other
        if isinstance(other, (int, Rational)):
            other = Fraction(other)
            v = valuation(other, self.p)
            if v == float("inf"):
                # exact zero: give it enough precision never to be the bottleneck
                return PadicNumber.zero(self.p, max(self.precision, 0) + max(0, -self.valuation) + 1)
            # enough digits that neither the additive nor the relative rule binds
            relative = self.precision - self.valuation
            return PadicNumber.from_rational(other, self.p, max(self.precision, v + relative) + 1)
        return NotImplemented

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return self.unit == 0

    def is_unit(self) -> bool:
        return self.unit != 0 and self.valuation == 0

    @property
    def relative_precision(self) -> int:
        return self.precision - self.valuation

    def digits(self) -> list[int]:
        """Base-p digits of the unit part, lowest first."""
        out, u = [], self.unit
        for _ in range(self.precision - self.valuation):
            u, d = divmod(u, self.p)
            out.append(d)
        return out

    def lift(self):
        """Canonical rational representative: ``p^v * u`` with ``0 <= u < p^(N-v)``."""
        if self.valuation >= 0:
            return self.p ** self.valuation * self.unit
        return Fraction(self.unit, self.p ** -self.valuation)

    def to_fraction(self) -> Fraction:
        return Fraction(self.lift())

    def symmetric_lift(self) -> int:
        """Integer representative in ``(-p^N/2, p^N/2]``; requires ``v >= 0``."""
        if self.valuation < 0:
            raise NotAUnit("value is not integral")
        mod = self.p ** self.precision
        n = self.lift() % mod
        return n - mod if n > mod // 2 else n

    def residue(self) -> int:
        if self.valuation < 0:
            raise NotAUnit("value is not integral")
        if self.precision <= 0:
            raise PrecisionExhausted("no digits known", shortfall=1 - self.precision)
        return self.unit % self.p if self.valuation == 0 else 0

    def with_precision(self, precision: int) -> PadicNumber:
        """Truncate to a lower absolute precision (never raises it)."""
        if precision > self.precision:
            raise PrecisionExhausted(
                f"cannot raise precision from {self.precision} to {precision}",
                shortfall=precision - self.precision,
            )
        return PadicNumber(self.p, self.valuation, self.unit, precision)

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> PadicNumber:
        return PadicNumber(self.p, self.valuation, -self.unit, self.precision)

    def __pos__(self) -> PadicNumber:
        return self

    def __add__(self, other) -> PadicNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.p
        prec = min(self.precision, other.precision)
        w = min(self.valuation, other.valuation)
        s = self.unit * p ** (self.valuation - w) + other.unit * p ** (other.valuation - w)
        return PadicNumber(p, w, s, prec)

    __radd__ = __add__

    def __sub__(self, other) -> PadicNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> PadicNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other) -> PadicNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.precision + other.valuation, other.precision + self.valuation)
        if self.unit == 0 and other.unit == 0:
            # zero * zero is known to p^(sum of precisions); letting that grow on
            # every multiplication only costs time
            prec = min(prec, max(self.precision, other.precision))
        return PadicNumber(self.p, self.valuation + other.valuation, self.unit * other.unit, prec)

    __rmul__ = __mul__

    def __truediv__(self, other) -> PadicNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise DivisionByZero(f"division by {other}")
        v = self.valuation - other.valuation
        prec = min(self.precision - other.valuation,
                   other.precision + self.valuation - 2 * other.valuation)
        if prec - v <= 0:
            return PadicNumber.zero(self.p, prec)
        mod = self.p ** (prec - v)
        return PadicNumber(self.p, v, self.unit * pow(other.unit, -1, mod), prec)

    def __rtruediv__(self, other) -> PadicNumber:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def inverse(self) -> PadicNumber:
        return self._coerce(1) / self

    def __pow__(self, n: int) -> PadicNumber:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (self ** -n).inverse()
        result = self._coerce(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        p = self.p
        terms = []
        for k, d in enumerate(self.digits(), start=self.valuation):
            if d == 0:
                continue
            if k == 0:
                terms.append(str(d))
            else:
                power = str(p) if k == 1 else f"{p}^{k}"
                terms.append(power if d == 1 else f"{d}*{power}")
        terms.append(f"O({p}^{self.precision})")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"PadicNumber({self})"

    def to_json(self) -> dict:
        return {
            "digits": str(self),
            "valuation": self.valuation,
            "unit": self.unit,
            "precision": self.precision,
        }


def from_rational(numerator: int, denominator: int, p: int, N: int) -> PadicNumber:
    check_prime(p)
    if denominator == 0:
        raise DivisionByZero("zero denominator")
    return PadicNumber.from_rational(Fraction(numerator, denominator), p, N)


def _sqrt_mod_p(a: int, p: int) -> int | None:
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return r


def hensel_sqrt(a: PadicNumber, branch: int | None = None) -> PadicNumber:
    """Square root of ``a`` whose unit part is congruent to ``branch`` mod p.

    With ``branch=None`` the root whose unit part has the smaller residue is
    returned.  The result squares to ``a`` at ``a``'s full precision.
    """
    p = a.p
    if a.is_zero():
        return PadicNumber.zero(p, (a.precision + 1) // 2)
    if a.valuation % 2:
        raise NoSquareRoot(f"odd valuation {a.valuation}")
    r0 = _sqrt_mod_p(a.unit, p)
    if r0 is None:
        raise NoSquareRoot(f"{a.unit % p} is not a square mod {p}")
    if branch is not None:
        branch %= p
        if branch not in (r0, p - r0):
            raise InvalidInput(f"branch {branch} is not a square root of {a.unit % p} mod {p}")
        r0 = branch
    else:
        r0 = min(r0, p - r0)
    rel = a.precision - a.valuation
    r, k = r0, 1
    inv2 = None
    while k < rel:
        k = min(2 * k, rel)
        mod = p ** k
        inv2 = pow(2 * r, -1, mod)
        r = (r - (r * r - a.unit) * inv2) % mod
    half = a.valuation // 2
    return PadicNumber(p, half, r, half + rel)


def teichmuller(a: PadicNumber, N: int | None = None) -> PadicNumber:
    """The (p-1)-st root of unity congruent to the unit ``a`` modulo p."""
    if a.valuation != 0 or a.is_zero():
        raise NotAUnit(f"{a} is not a unit")
    p = a.p
    N = a.precision if N is None else N
    x, k = a.unit % p, 1
    while k < N:
        k = min(2 * k, N)
        mod = p ** k
        # Newton step for x^(p-1) = 1
        fx = pow(x, p - 1, mod) - 1
        dfx = (p - 1) * pow(x, p - 2, mod)
        x = (x - fx * pow(dfx, -1, mod)) % mod
    return PadicNumber(p, 0, x, N)


def rational_reconstruction(value: PadicNumber, bound: int | None = None) -> Fraction | None:
    """Smallest rational ``n/d`` with ``|n|, d <= bound`` congruent to ``value``.

    ``bound`` defaults to ``p^(N/2 - 1)`` in the relative precision.  Returns
    ``None`` when no such rational exists.
    """
    p = value.p
    if value.is_zero():
        return Fraction(0)
    rel = value.precision - value.valuation
    if bound is None:
        bound = int(p ** (rel / 2 - 1)) if rel > 2 else 1
    mod = p ** rel
    r0, r1 = mod, value.unit % mod
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    result = Fraction(r1, s1)
    if (result.numerator - value.unit * result.denominator) % mod:
        return None
    if result.denominator % p == 0:
        return None
    return result * Fraction(p) ** value.valuation
