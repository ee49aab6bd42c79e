"""Hyperelliptic models y^2 = g(x) over Q and their residue disks mod p."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import poly
from .errors import (DiskMismatch, InvalidModel, NoSuchInvolution, PrecisionExhausted,
                     UnsupportedDisk)
from .finitefield import FiniteField
from .padic import PadicNumber, check_prime, hensel_sqrt, rational_reconstruction, valuation
from .series import INTEGRAL_TAIL, ZERO_TAIL, TruncatedSeries


@dataclass(frozen=True)
class HyperellipticModel:
    """The curve ``y^2 = g(x)``; ``coefficients`` lists g constant term first."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(poly.make(self.coefficients))
        object.__setattr__(self, "coefficients", coeffs)
        if not 3 <= len(coeffs) - 1 <= 6:
            raise InvalidModel(f"degree {len(coeffs) - 1} is outside 3..6")
        if poly.discriminant(list(coeffs)) == 0:
            raise InvalidModel("g has a repeated root")

    @classmethod
    def from_highest_first(cls, coeffs) -> HyperellipticModel:
        return cls(tuple(reversed([Fraction(c) for c in coeffs])))

    @property
    def poly(self) -> list:
        return list(self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def genus(self) -> int:
        return (self.degree + 1) // 2 - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1]

    def g(self, x):
        return poly.evaluate(self.coefficients, x)

    def discriminant(self) -> Fraction:
        return poly.discriminant(self.poly)

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coefficients[1::2])

    def contains(self, point) -> bool:
        x, y = point
        return y * y == self.g(x)

    def __str__(self) -> str:
        return f"y^2 = {poly.to_string(self.poly)}"


X0_37 = HyperellipticModel.from_highest_first([-1, 0, -9, 0, -11, 0, 37])


class AffinePoint(NamedTuple):
    x: object
    y: object


class FpPoint(NamedTuple):
    """A point over F_{p^k}; ``x is None`` marks a point at infinity."""

    x: object
    y: object

    @property
    def at_infinity(self) -> bool:
        return self.x is None


@dataclass(frozen=True)
class ResidueDisk:
    """Residue disk of a point over F_p.

    ``kind`` is ``ordinary``, ``weierstrass`` or ``infinite``.  For an infinite
    disk of an even-degree model ``y0`` is the residue of ``y/x^(g+1)``.
    """

    p: int
    kind: str
    x0: int | None
    y0: int | None

    @property
    def uniformizer(self) -> str:
        return {"ordinary": "x - x0", "weierstrass": "y", "infinite": "1/x"}[self.kind]

    @property
    def residue(self) -> tuple:
        return (self.x0, self.y0)

    def sort_key(self):
        return (self.kind == "infinite", self.x0 if self.x0 is not None else -1,
                self.y0 if self.y0 is not None else -1)

    def label(self) -> str:
        if self.kind == "infinite":
            return "inf" if self.y0 is None else f"inf{self.y0}"
        return f"({self.x0},{self.y0})"


def _is_p_integral(c: Fraction, p: int) -> bool:
    return Fraction(c).denominator % p != 0


def check_good_reduction(model: HyperellipticModel, p: int) -> bool:
    check_prime(p)
    if not all(_is_p_integral(c, p) for c in model.coefficients):
        return False
    lead_disc = model.leading * model.discriminant()
    return valuation(lead_disc, p) == 0


def _reduce(model: HyperellipticModel, field: FiniteField):
    return [field.from_rational(c) for c in model.coefficients]


def infinite_point_count(model: HyperellipticModel, p: int, k: int = 1) -> int:
    if model.degree % 2:
        return 1
    field = FiniteField(p, k)
    return 2 if field.is_square(field.from_rational(model.leading)) else 0


def points_mod_p(model: HyperellipticModel, p: int, k: int = 1) -> list[FpPoint]:
    """All points over F_{p^k}: affine pairs, then points at infinity."""
    field = FiniteField(p, k)
    g = _reduce(model, field)
    roots = field.square_roots()
    out = []
    for x in field.elements():
        for y in sorted(roots.get(field.evaluate(g, x), [])):
            out.append(FpPoint(x if k > 1 else x[0], y if k > 1 else y[0]))
    if model.degree % 2:
        out.append(FpPoint(None, None))
    else:
        lead = field.from_rational(model.leading)
        for y in sorted(roots.get(lead, [])):
            out.append(FpPoint(None, y if k > 1 else y[0]))
    return out


def count_points(model: HyperellipticModel, p: int, k: int = 1) -> int:
    """#X(F_{p^k}) via the quadratic character."""
    field = FiniteField(p, k)
    g = _reduce(model, field)
    total = 0
    for x in field.elements():
        v = field.evaluate(g, x)
        total += 1 if field.is_zero(v) else (2 if field.is_square(v) else 0)
    return total + infinite_point_count(model, p, k)


def classify_disks(model: HyperellipticModel, p: int) -> list[ResidueDisk]:
    disks = []
    for pt in points_mod_p(model, p):
        if pt.at_infinity:
            disks.append(ResidueDisk(p, "infinite", None, pt.y))
        elif pt.y == 0:
            disks.append(ResidueDisk(p, "weierstrass", pt.x, 0))
        else:
            disks.append(ResidueDisk(p, "ordinary", pt.x, pt.y))
    return sorted(disks, key=ResidueDisk.sort_key)


def disk_of(model: HyperellipticModel, point, p: int) -> ResidueDisk:
    """Residue disk containing a rational or p-adic affine point."""
    x, y = point
    x = _as_padic(x, p)
    y = _as_padic(y, p)
    if x.valuation < 0:
        if model.degree % 2:
            return ResidueDisk(p, "infinite", None, None)
        ratio = y / x ** (model.genus + 1)
        return ResidueDisk(p, "infinite", None, ratio.residue())
    xr, yr = x.residue(), y.residue()
    kind = "weierstrass" if yr == 0 else "ordinary"
    return ResidueDisk(p, kind, xr, yr)


def _as_padic(v, p: int, N: int = 40) -> PadicNumber:
    if isinstance(v, PadicNumber):
        return v
    return PadicNumber.from_rational(Fraction(v), p, N)


def _root_lift(model: HyperellipticModel, x0: int, p: int, N: int) -> PadicNumber:
    """Newton lift of the simple root of g congruent to x0."""
    g, dg = model.poly, poly.derivative(model.poly)
    x = PadicNumber.from_rational(x0, p, N)
    for _ in range(2 * N.bit_length() + 4):
        x = x - poly.evaluate(g, x) / poly.evaluate(dg, x)
    return x.with_precision(N)


def lift_disk_center(disk: ResidueDisk, model: HyperellipticModel, p: int, N: int) -> AffinePoint:
    """Canonical lift of the disk's reduction point.

    Ordinary disks use the smallest nonnegative integer ``x0`` and the square
    root of ``g(x0)`` on the disk's branch.  Weierstrass disks use the root of g.
    """
    if disk.kind == "ordinary":
        x = PadicNumber.from_rational(disk.x0, p, N)
        y = hensel_sqrt(model.g(x), branch=disk.y0)
        return AffinePoint(x, y.with_precision(min(N, y.precision)))
    if disk.kind == "weierstrass":
        return AffinePoint(_root_lift(model, disk.x0, p, N), PadicNumber.zero(p, N))
    raise UnsupportedDisk("the center of an infinite disk is not an affine point")


def local_parametrization(disk: ResidueDisk, model: HyperellipticModel, p: int, N: int,
                          M: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Series ``(x(t), y(t))`` for the disk's uniformizer.

    Ordinary disks: ``x = x0 + t`` and ``y`` the square root of ``g(x0 + t)``.
    Weierstrass disks: ``y = t`` and ``x`` the root of ``g(x) = t^2`` near x0.
    Infinite disks of odd-degree models use :func:`infinite_expansion`.
    """
    if disk.kind == "ordinary":
        center = lift_disk_center(disk, model, p, N)
        x = TruncatedSeries.from_values([disk.x0, 1], p, N)
        shifted = poly.taylor_shift(model.poly, disk.x0)
        padded = (shifted + [Fraction(0)] * M)[:M]
        # dropped terms of g(x0 + t) are integral
        gx = TruncatedSeries.from_values(padded, p, N,
                                         tail=ZERO_TAIL if len(shifted) <= M else INTEGRAL_TAIL)
        y = gx.sqrt(center.y)
        return x, y
    if disk.kind == "weierstrass":
        e = _root_lift(model, disk.x0, p, N)
        shifted = [poly.evaluate(_taylor_coefficient(model.poly, j), e)
                   for j in range(model.degree + 1)]
        c1 = shifted[1]
        if c1.valuation != 0:
            raise PrecisionExhausted("g'(e) is not a unit; model has bad reduction")
        # solve c1*s + c2*s^2 + ... = t^2 by fixed-point iteration
        t2 = TruncatedSeries.from_values([0, 0, 1], p, N)
        s = TruncatedSeries.from_values([0] * M, p, N, tail=INTEGRAL_TAIL)
        inv = c1.inverse()
        for _ in range(M):
            higher = TruncatedSeries.from_values([0] * M, p, N, tail=INTEGRAL_TAIL)
            power = s
            for j in range(2, model.degree + 1):
                power = power * s
                higher = higher + power.scale(shifted[j])
            s = (t2 - higher).scale(inv)
        t = TruncatedSeries.from_values([0, 1], p, N)
        x = s + TruncatedSeries([e], p, ZERO_TAIL)
        return x, t
    raise UnsupportedDisk("infinite disks use infinite_expansion()")


def _taylor_coefficient(a, j):
    """Polynomial whose value at e is the j-th Taylor coefficient of a at e."""
    return poly.trim(a[n] * math.comb(n, j) for n in range(j, len(a)))


def infinite_expansion(model: HyperellipticModel, p: int, N: int, M: int) -> TruncatedSeries:
    """``h(t)`` with ``x = t^-2`` and ``y = t^-d h(t)`` at infinity (odd degree, monic)."""
    d = model.degree
    if d % 2 == 0:
        raise UnsupportedDisk("infinite expansion implemented for odd degree only")
    # h^2 = sum q_i t^(2d - 2i)
    coeffs = [Fraction(0)] * (2 * d + 1)
    for i, q in enumerate(model.coefficients):
        coeffs[2 * d - 2 * i] = q
    coeffs = (coeffs + [Fraction(0)] * M)[:M]
    h2 = TruncatedSeries.from_values(coeffs, p, N)
    root0 = hensel_sqrt(h2.coeffs[0], branch=1)
    return h2.sqrt(root0)


def differential_series(model: HyperellipticModel, disk: ResidueDisk, i: int, p: int, N: int,
                        M: int) -> TruncatedSeries:
    """``A(t)`` with ``x^i dx/(2y) = A(t) dt`` in the disk's uniformizer."""
    if disk.kind == "ordinary":
        x, y = local_parametrization(disk, model, p, N, M)
        inv = (y.scale(2)).inverse()
        return _power(x, i, M) * inv
    if disk.kind == "weierstrass":
        x, _ = local_parametrization(disk, model, p, N, M)
        dg = poly.derivative(model.poly)
        gp = _poly_of_series(dg, x, M)
        return _power(x, i, M) * gp.inverse()
    h = infinite_expansion(model, p, N, M)
    shift = 2 * model.genus - 2 - 2 * i
    if shift < 0:
        raise UnsupportedDisk("non-holomorphic differential at infinity")
    inv = h.inverse()
    coeffs = [PadicNumber.zero(p, N)] * shift + [-c for c in inv.coeffs]
    return TruncatedSeries(coeffs[:M], p, inv.tail)


def _power(x: TruncatedSeries, i: int, M: int) -> TruncatedSeries:
    out = TruncatedSeries.from_values([1], x.p, max(c.precision for c in x.coeffs))
    for _ in range(i):
        out = out * x
    if out.exact and out.order > M:
        out = TruncatedSeries(out.coeffs[:M], x.p, INTEGRAL_TAIL)
    return out


def _poly_of_series(a, x: TruncatedSeries, M: int) -> TruncatedSeries:
    acc = TruncatedSeries.from_values([0], x.p, max(c.precision for c in x.coeffs))
    for c in reversed(a):
        acc = acc * x + c
    return acc


def parameter(model: HyperellipticModel, disk: ResidueDisk, point, p: int,
              N: int = 40) -> PadicNumber:
    """Value of the disk's uniformizer at a point of the disk."""
    x, y = _as_padic(point[0], p, N), _as_padic(point[1], p, N)
    found = disk_of(model, (x, y), p)
    if (found.kind, found.x0, found.y0) != (disk.kind, disk.x0, disk.y0):
        raise DiskMismatch(f"point lies in disk {found.label()}, not {disk.label()}")
    if disk.kind == "ordinary":
        return x - disk.x0
    if disk.kind == "weierstrass":
        return y
    if model.degree % 2 == 0:
        raise UnsupportedDisk("infinite disks of even-degree models are not parametrized")
    # t = (x/y) h(t), iterated to its fixed point
    Mh = 2 * N
    h = infinite_expansion(model, p, N, Mh)
    ratio = x / y
    t = ratio
    for _ in range(N + 2):
        t = ratio * h.evaluate(t)
    return t


def apply_involution(model: HyperellipticModel, which: str, point):
    """Hyperelliptic ``sigma``, the even-model involution ``w``, or their product."""
    x, y = point
    if which == "sigma":
        return AffinePoint(x, -y)
    if which in ("w", "wsigma", "sigmaw"):
        if not model.is_even():
            raise NoSuchInvolution("x -> -x needs an even polynomial g")
        return AffinePoint(-x, y) if which == "w" else AffinePoint(-x, -y)
    raise NoSuchInvolution(f"unknown involution {which!r}")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def search_rational_points(model: HyperellipticModel, bound: int) -> list[AffinePoint]:
    """Affine rational points with ``|num(x)|, den(x) <= bound``."""
    points = set()
    for den in range(1, bound + 1):
        for num in range(-bound, bound + 1):
            if math.gcd(num, den) != 1:
                continue
            x = Fraction(num, den)
            r = _rational_sqrt(model.g(x))
            if r is not None:
                points.add((x, r))
                points.add((x, -r))
    return [AffinePoint(*pt) for pt in sorted(points)]


@dataclass
class Recognition:
    """How a p-adic point was identified.

    ``status`` is ``rational``, ``algebraic`` or ``unrecognized``.  For
    algebraic points ``minpoly`` holds the integer coefficients (constant
    first) of the minimal polynomial of y over Q.
    """

    status: str
    x: object
    y: object
    minpoly: tuple | None = None


def recognize(model: HyperellipticModel, x: PadicNumber, y: PadicNumber,
              height_cutoff: int = 10 ** 6) -> Recognition:
    xr = rational_reconstruction(x)
    if xr is None or not (x - xr).is_zero():
        return Recognition("unrecognized", x, y)
    gx = model.g(xr)
    root = _rational_sqrt(gx)
    if root is not None:
        for cand in (root, -root):
            if (y - cand).is_zero():
                return Recognition("rational", xr, cand)
        return Recognition("unrecognized", x, y)
    # y is a root of z^2 - g(x); clear denominators for an integral minimal polynomial
    mp = (-gx.numerator, 0, gx.denominator)
    if max(abs(c) for c in mp) > height_cutoff:
        return Recognition("unrecognized", x, y)
    return Recognition("algebraic", xr, y, mp)
