"""Truncated power series over Q_p.

A series stores its first ``M`` coefficients as :class:`PadicNumber` values
and a :class:`Tail` describing what is known about the coefficients of
degree ``>= M``: ``v(a_n) >= slope*n + offset - logs*floor(log_p n)``.  A tail
with infinite offset means the series is an exact polynomial.  Knowing the
tail is what lets :meth:`TruncatedSeries.strassman_count` and
:meth:`TruncatedSeries.evaluate` certify their answers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import CompositionDomain, PrecisionExhausted, PrimeMismatch
from .padic import PadicNumber

INF = math.inf


def floor_log(n: int, p: int) -> int:
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class Tail:
    slope: int = 0
    offset: float = 0
    logs: int = 0

    @property
    def exact(self) -> bool:
        return self.offset == INF

    def bound(self, n: int, p: int) -> float:
        return self.slope * n + self.offset - self.logs * floor_log(max(n, 1), p)

    def minimum(self, start: int, p: int, extra_slope: int = 0) -> float:
        """Lower bound for ``bound(n) + extra_slope*n`` over all ``n >= start``."""
        if self.exact:
            return INF
        s = self.slope + extra_slope
        if s < 0 or (s == 0 and self.logs > 0):
            return -INF
        if s == 0:
            return self.offset
        best = s * start + self.offset - self.logs * floor_log(max(start, 1), p)
        n = start
        while True:
            n += 1
            val = s * n + self.offset - self.logs * floor_log(n, p)
            best = min(best, val)
            if s * (n - start) > self.logs * (floor_log(n, p) + 1) and n * s * math.log(p) > self.logs:
                return best


ZERO_TAIL = Tail(0, INF, 0)
INTEGRAL_TAIL = Tail(0, 0, 0)


class TruncatedSeries:
    """Power series ``sum a_k t^k + O(t^M)`` with p-adic coefficients."""

    __slots__ = ("p", "coeffs", "tail")

    def __init__(self, coeffs, p: int, tail: Tail | None = ZERO_TAIL):
        coeffs = list(coeffs)
        for c in coeffs:
            if c.p != p:
                raise PrimeMismatch("coefficients over different primes")
        self.p = p
        self.coeffs = coeffs
        self.tail = tail

    @classmethod
    def from_values(cls, values, p: int, N: int, tail: Tail | None = ZERO_TAIL) -> TruncatedSeries:
        coeffs = [v if isinstance(v, PadicNumber) else PadicNumber.from_rational(Fraction(v), p, N)
                  for v in values]
        return cls(coeffs, p, tail)

    @classmethod
    def variable(cls, p: int, N: int) -> TruncatedSeries:
        return cls.from_values([0, 1], p, N)

    # -- basic properties ---------------------------------------------------

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def exact(self) -> bool:
        return self.tail is not None and self.tail.exact

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> PadicNumber:
        return self.coeffs[k]

    def _zero(self, N: int = None) -> PadicNumber:
        if N is None:
            N = max((c.precision for c in self.coeffs), default=20)
        return PadicNumber.zero(self.p, N)

    def coefficient(self, k: int) -> PadicNumber:
        if k < len(self.coeffs):
            return self.coeffs[k]
        if self.exact:
            return self._zero()
        raise PrecisionExhausted(f"coefficient {k} beyond truncation order {self.order}",
                                 shortfall=k + 1 - self.order)

    def truncate(self, M: int) -> TruncatedSeries:
        if M >= self.order:
            return self
        known = min(c.valuation for c in self.coeffs[M:])
        tail = Tail(0, known, 0) if self.tail is None else self.tail
        if self.tail is not None:
            tail = _min_tail(tail, Tail(0, known, 0))
        return TruncatedSeries(self.coeffs[:M], self.p, tail)

    def min_valuation(self) -> float:
        """Lower bound for the valuation of every coefficient, tail included."""
        known = min((c.valuation for c in self.coeffs), default=INF)
        if self.tail is None:
            return -INF
        return min(known, self.tail.minimum(self.order, self.p))

    def valuations(self) -> list[int]:
        return [c.valuation for c in self.coeffs]

    # -- ring operations ----------------------------------------------------

    def _binary_order(self, other: TruncatedSeries) -> tuple[int | None, bool]:
        if self.p != other.p:
            raise PrimeMismatch("series over different primes")
        orders = [s.order for s in (self, other) if not s.exact]
        return (min(orders) if orders else None), not orders

    def __add__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return self + self._const(other)
        M, exact = self._binary_order(other)
        length = max(self.order, other.order) if exact else M
        coeffs = []
        for k in range(length):
            a = self.coeffs[k] if k < self.order else None
            b = other.coeffs[k] if k < other.order else None
            coeffs.append(a + b if a is not None and b is not None else (a if b is None else b))
        if exact:
            tail = ZERO_TAIL
        elif self.tail is None or other.tail is None:
            tail = None
        else:
            tail = _min_tail(self.tail, other.tail)
            # known coefficients of the longer operand that fall past M
            for s in (self, other):
                if s.order > M:
                    tail = _min_tail(tail, Tail(0, min(c.valuation for c in s.coeffs[M:]), 0))
        return TruncatedSeries(coeffs, self.p, tail)

    __radd__ = __add__

    def __neg__(self) -> TruncatedSeries:
        return TruncatedSeries([-c for c in self.coeffs], self.p, self.tail)

    def __sub__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            other = self._const(other)
        return self + (-other)

    def __rsub__(self, other) -> TruncatedSeries:
        return self._const(other) - self

    def _const(self, c) -> TruncatedSeries:
        if not isinstance(c, PadicNumber):
            c = self._zero() + c
        return TruncatedSeries([c], self.p, ZERO_TAIL)

    def scale(self, c) -> TruncatedSeries:
        coeffs = [a * c for a in self.coeffs]
        tail = self.tail
        if tail is not None and not tail.exact:
            v = c.valuation if isinstance(c, PadicNumber) else _val(c, self.p)
            tail = Tail(tail.slope, tail.offset + v, tail.logs)
        return TruncatedSeries(coeffs, self.p, tail)

    def __mul__(self, other) -> TruncatedSeries:
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        M, exact = self._binary_order(other)
        length = self.order + other.order - 1 if exact else M
        coeffs = []
        for n in range(length):
            acc = None
            for i in range(max(0, n - other.order + 1), min(n, self.order - 1) + 1):
                term = self.coeffs[i] * other.coeffs[n - i]
                acc = term if acc is None else acc + term
            coeffs.append(acc if acc is not None else self._zero())
        if exact:
            tail = ZERO_TAIL
        else:
            lo = self.min_valuation() + other.min_valuation()
            tail = None if lo == -INF else Tail(0, lo, 0)
        return TruncatedSeries(coeffs, self.p, tail)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> TruncatedSeries:
        result = self._const(1)
        for _ in range(n):
            result = result * self
        return result

    def inverse(self) -> TruncatedSeries:
        """Multiplicative inverse; the constant term must be a unit."""
        a0 = self.coeffs[0]
        if a0.valuation != 0 or a0.is_zero():
            raise PrecisionExhausted("constant term is not a unit")
        M = self.order
        inv0 = a0.inverse()
        out = [inv0]
        for n in range(1, M):
            acc = self._zero()
            for i in range(1, n + 1):
                acc = acc + self.coeffs[i] * out[n - i]
            out.append(-acc * inv0)
        tail = None if self.tail is None or self.min_valuation() < 0 else INTEGRAL_TAIL
        return TruncatedSeries(out, self.p, tail)

    def sqrt(self, root0: PadicNumber) -> TruncatedSeries:
        """Square root with prescribed constant term ``root0`` (a unit)."""
        M = self.order
        out = [root0]
        inv = (2 * root0).inverse()
        for n in range(1, M):
            acc = self.coeffs[n]
            for i in range(1, n):
                acc = acc - out[i] * out[n - i]
            out.append(acc * inv)
        # sqrt(1 + h) has integral binomial coefficients for odd p
        integral = (self.tail is not None and root0.valuation == 0
                    and self.min_valuation() >= 0)
        tail = INTEGRAL_TAIL if integral else None
        return TruncatedSeries(out, self.p, tail)

    def compose(self, g: TruncatedSeries) -> TruncatedSeries:
        """``self(g(t))``; ``g`` must have certified-zero constant term."""
        if not g.coeffs or not g.coeffs[0].is_zero():
            raise CompositionDomain("inner series has a nonzero constant term")
        if self.p != g.p:
            raise PrimeMismatch("series over different primes")
        if self.exact and g.exact:
            inner = TruncatedSeries(g.coeffs, self.p, ZERO_TAIL)
            result = self._const(0)
            for c in reversed(self.coeffs):
                result = result * inner + c
            return result
        M = min(s.order for s in (self, g) if not s.exact)
        inner = TruncatedSeries(g.coeffs[:M], self.p, None)
        power = TruncatedSeries([self._zero() + 1], self.p, None)
        acc = [self._zero()] * M
        for k in range(min(M, self.order)):
            for n in range(min(M, power.order)):
                acc[n] = acc[n] + self.coeffs[k] * power.coeffs[n]
            power = _truncated_product(power, inner, M)
        tail = None
        if self.tail is not None and g.tail is not None and g.min_valuation() >= 0:
            lo = self.min_valuation()
            tail = None if lo == -INF else Tail(0, lo, 0)
        return TruncatedSeries(acc, self.p, tail)

    # -- calculus -------------------------------------------------------------

    def derivative(self) -> TruncatedSeries:
        coeffs = [self.coeffs[k] * k for k in range(1, self.order)]
        if not coeffs:
            coeffs = [self._zero()]
        tail = self.tail
        if tail is not None and not tail.exact:
            tail = Tail(tail.slope, tail.offset + tail.slope, tail.logs)
        return TruncatedSeries(coeffs, self.p, tail)

    def formal_integrate(self) -> TruncatedSeries:
        """Termwise antiderivative with zero constant term."""
        coeffs = [self._zero()] + [a / (k + 1) for k, a in enumerate(self.coeffs)]
        tail = self.tail
        if tail is not None and not tail.exact:
            tail = Tail(tail.slope, tail.offset - tail.slope, tail.logs + 1)
        return TruncatedSeries(coeffs, self.p, tail)

    def substitute_pT(self, k: int = 1) -> TruncatedSeries:
        """``self(p^k T)``: the n-th coefficient gains ``k*n`` in valuation."""
        p = self.p
        coeffs = [a * p ** (k * n) for n, a in enumerate(self.coeffs)]
        tail = self.tail
        if tail is not None and not tail.exact:
            tail = Tail(tail.slope + k, tail.offset, tail.logs)
        return TruncatedSeries(coeffs, p, tail)

    def recenter(self, center, k: int = 1) -> TruncatedSeries:
        """``self(center + p^k S)`` for an integral ``center``."""
        p = self.p
        M = self.order
        if isinstance(center, PadicNumber) and center.valuation < 0:
            raise PrecisionExhausted("recentering at a non-integral point")
        tail_floor = INF if self.exact else (
            -INF if self.tail is None else self.tail.minimum(M, p))
        out = []
        length = M if not self.exact else M
        # powers of center
        cpow = [self._zero() + 1]
        for _ in range(M):
            cpow.append(cpow[-1] * center)
        for j in range(length):
            acc = self._zero()
            for n in range(j, M):
                acc = acc + self.coeffs[n] * (math.comb(n, j) * cpow[n - j])
            acc = acc * p ** (k * j)
            if tail_floor != INF:
                acc = _cap(acc, tail_floor + k * j)
            out.append(acc)
        if self.exact:
            tail = ZERO_TAIL
        elif tail_floor == -INF:
            tail = None
        else:
            tail = Tail(k, tail_floor, 0)
        return TruncatedSeries(out, p, tail)

    def evaluate(self, t) -> PadicNumber:
        """Value at ``t`` with ``v(t) >= 0``, capped by what the tail allows."""
        if not isinstance(t, PadicNumber):
            t = self._zero() + Fraction(t)
        w = t.valuation
        if not self.exact and w < 0:
            raise PrecisionExhausted("evaluation outside the disk of convergence")
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * t + c
        if acc is None:
            acc = self._zero()
        if not self.exact:
            if self.tail is None:
                raise PrecisionExhausted("series tail is unknown")
            cap = self.tail.minimum(self.order, self.p, extra_slope=w)
            if cap == -INF:
                raise PrecisionExhausted("series tail does not converge at this point")
            acc = _cap(acc, cap)
        return acc

    # -- zeros ----------------------------------------------------------------

    def strassman_count(self) -> int:
        """Number of zeros in the closed unit disk, with multiplicity."""
        if self.tail is None:
            raise PrecisionExhausted("series tail is unknown; cannot certify Strassman index")
        nonzero = [(k, c.valuation) for k, c in enumerate(self.coeffs) if not c.is_zero()]
        if not nonzero:
            raise PrecisionExhausted("no coefficient is certified nonzero", shortfall=1)
        m = min(v for _, v in nonzero)
        for c in self.coeffs:
            if c.is_zero() and c.precision <= m:
                raise PrecisionExhausted(
                    f"a coefficient is only known to O(p^{c.precision}) but the dominant "
                    f"valuation is {m}", shortfall=m + 1 - c.precision)
        tail_min = self.tail.minimum(self.order, self.p)
        if tail_min <= m:
            raise PrecisionExhausted(
                f"truncated tail may reach valuation {tail_min} <= {m}; raise the series order",
                shortfall=None if tail_min == -INF else int(m + 1 - tail_min))
        return max(k for k, v in nonzero if v == m)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self})"

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("T" if k == 1 else f"T^{k}")
            parts.append(f"({c}){mono}" if mono else f"({c})")
        if not self.exact:
            parts.append(f"O(T^{self.order})")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {
            "order": None if self.exact else self.order,
            "coefficients": [c.to_json() for c in self.coeffs],
        }


def _val(c, p) -> float:
    from .padic import valuation
    return valuation(c, p)


def _cap(c: PadicNumber, cap: float) -> PadicNumber:
    if cap == INF or cap >= c.precision:
        return c
    return c.with_precision(int(math.floor(cap)))


def _min_tail(a: Tail, b: Tail) -> Tail:
    if a.exact:
        return b
    if b.exact:
        return a
    return Tail(min(a.slope, b.slope), min(a.offset, b.offset), max(a.logs, b.logs))


def _truncated_product(f: TruncatedSeries, g: TruncatedSeries, M: int) -> TruncatedSeries:
    out = []
    for n in range(M):
        acc = None
        for i in range(0, min(n, f.order - 1) + 1):
            if n - i >= g.order:
                continue
            term = f.coeffs[i] * g.coeffs[n - i]
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else f._zero())
    return TruncatedSeries(out, f.p, None)


class ZeroSet(NamedTuple):
    zeros: list
    clusters: list  # (center, radius exponent, multiplicity)


def _newton(g: TruncatedSeries, s0: int) -> PadicNumber:
    dg = g.derivative()
    s = g._zero() + s0
    prev = None
    for _ in range(200):
        val = g.evaluate(s)
        if val.is_zero():
            # pin the precision of s to what the value certifies
            d = dg.evaluate(s)
            return s.with_precision(min(s.precision, val.precision - d.valuation))
        d = dg.evaluate(s)
        step = val / d
        s_new = s - step
        if prev is not None and s_new.precision <= s.precision and (s_new - s).is_zero():
            return s_new
        prev, s = s, s_new
    return s


def find_zeros(f: TruncatedSeries, max_depth: int = 40) -> ZeroSet:
    """Zeros of ``f`` in the closed unit disk of Q_p.

    Residue classes are refined until each holds a single zero, which is
    then polished by Newton iteration.  Classes that still hold several
    zeros when precision runs out are returned as clusters.
    """
    p = f.p
    zeros, clusters = [], []

    def descend(g, center, e, n, depth):
        # g(S) = f(center + p^e S); n = Strassman count of g
        if n == 1:
            s = _locate_simple(g, depth)
            if s is not None:
                zeros.append(center + s * p ** e)
                return
        for r in range(p):
            try:
                h = g.recenter(r, 1)
                m = h.strassman_count()
            except PrecisionExhausted:
                clusters.append((center + r * p ** e, e + 1, None))
                continue
            if m == 0:
                continue
            if depth >= max_depth:
                clusters.append((center + r * p ** e, e + 1, m))
                continue
            descend(h, center + r * p ** e, e + 1, m, depth + 1)

    def _locate_simple(g, depth):
        # Hensel criterion at some residue; otherwise fall back to descent
        dg = g.derivative()
        for r in range(p):
            try:
                val = g.evaluate(r)
                d = dg.evaluate(r)
            except PrecisionExhausted:
                return None
            if d.is_zero():
                continue
            if val.is_zero() or val.valuation > 2 * d.valuation:
                return _newton(g, r)
        return None

    n = f.strassman_count()
    if n:
        descend(f, 0, 0, n, 0)
    zeros.sort(key=lambda z: (z.valuation if not z.is_zero() else 10 ** 9, z.unit))
    return ZeroSet(zeros, clusters)


def strassman_count(f: TruncatedSeries) -> int:
    return f.strassman_count()


def isolate_zeros(f: TruncatedSeries) -> list[PadicNumber]:
    return find_zeros(f).zeros


def formal_integrate(f: TruncatedSeries) -> TruncatedSeries:
    return f.formal_integrate()


def substitute_pT(f: TruncatedSeries) -> TruncatedSeries:
    return f.substitute_pT()
