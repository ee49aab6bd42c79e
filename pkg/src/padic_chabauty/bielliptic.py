"""Bielliptic genus-2 curves ``y^2 = c3 x^6 + c2 x^4 + c1 x^2 + c0``.

The involution ``x -> -x`` gives two elliptic quotients:

    C1: v^2 = c3 u^3 + c2 u^2 + c1 u + c0         f1(x, y) = (x^2, y)
    C2: v^2 = u^3 + c1 u^2 + c2 c0 u + c3 c0^2    f2(x, y) = (c0/x^2, c0 y/x^3)

With ``c3 = 1`` these are the usual monic formulas.  On differentials
``f1^*(du/2v) = 2 x dx/(2y)`` and ``f2^*(du/2v) = -2 dx/(2y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from .errors import DivisionByZero, InvalidInput, InvalidModel, MapsToInfinity
from .exactfield import QuadElement, parse
from .hyperelliptic import HyperellipticModel
from .padic import PadicNumber


@dataclass(frozen=True)
class BiellipticModel:
    c3: Fraction
    c2: Fraction
    c1: Fraction
    c0: Fraction

    def __post_init__(self):
        for name in ("c3", "c2", "c1", "c0"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c0 == 0:
            raise InvalidModel("c0 = 0: the map f2 is undefined")
        if self.c3 == 0:
            raise InvalidModel("c3 = 0: not a sextic")
        # raises InvalidModel on a repeated root
        self.curve

    @classmethod
    def from_hyperelliptic(cls, model: HyperellipticModel) -> BiellipticModel:
        if model.degree != 6 or not model.is_even():
            raise InvalidModel("bielliptic models are even sextics")
        c = model.coefficients
        return cls(c[6], c[4], c[2], c[0])

    @property
    def curve(self) -> HyperellipticModel:
        return HyperellipticModel((self.c0, 0, self.c1, 0, self.c2, 0, self.c3))

    def g(self, x):
        x2 = x * x
        return ((self.c3 * x2 + self.c2) * x2 + self.c1) * x2 + self.c0

    def quotient_curves(self) -> tuple[EllipticQuotient, EllipticQuotient]:
        C1 = HyperellipticModel((self.c0, self.c1, self.c2, self.c3))
        C2 = HyperellipticModel((self.c3 * self.c0 ** 2, self.c2 * self.c0, self.c1, 1))
        return (EllipticQuotient("f1", C1, self, "(x^2, y)"),
                EllipticQuotient("f2", C2, self, "(c0/x^2, c0*y/x^3)"))


@dataclass(frozen=True)
class EllipticQuotient:
    which: str
    curve: HyperellipticModel
    model: BiellipticModel
    formula: str

    def push(self, point):
        """Image of a point; ``None`` is the point at infinity."""
        try:
            return push_point(self.model, self.which, point)
        except MapsToInfinity:
            return None


def _is_zero(x) -> bool:
    if isinstance(x, PadicNumber):
        return x.is_zero()
    return x == 0


def push_point(model: BiellipticModel, which: str, point):
    x, y = point
    if which == "f1":
        return (x * x, y)
    if which == "f2":
        if _is_zero(x):
            raise MapsToInfinity("f2 sends x = 0 to the point at infinity")
        x3 = x * x * x
        return (model.c0 * x / x3, model.c0 * y / x3)
    raise InvalidInput(f"unknown quotient map {which!r}")


def quotient_curves(model: BiellipticModel) -> tuple[EllipticQuotient, EllipticQuotient]:
    return model.quotient_curves()


def alpha_coefficient(h, logval, degree: int):
    """``h / (degree * logval^2)`` for an externally supplied height ``h``."""
    if degree not in (1, 2):
        raise InvalidInput("degree must be 1 or 2")
    if _is_zero(logval):
        raise DivisionByZero("log value is zero at working precision")
    return h / (logval * logval * degree)


# -- verification over quadratic fields ----------------------------------------


@dataclass
class PointCheck:
    point: tuple
    on_curve: bool
    lhs: object
    rhs: object


def _to_quad(value, d: int) -> QuadElement:
    if isinstance(value, QuadElement):
        if value.d != d:
            raise InvalidInput(f"coordinate lives in Q(sqrt {value.d}), expected {d}")
        return value
    if isinstance(value, str):
        return parse(value, d)
    return QuadElement(value, 0, d)


def verify_points_over_field(model: BiellipticModel | HyperellipticModel, d: int,
                             points) -> list[PointCheck]:
    """Exact on-curve check for points with coordinates in Q(sqrt d)."""
    curve = model.curve if isinstance(model, BiellipticModel) else model
    out = []
    for pt in points:
        if pt is None or pt == "inf":
            out.append(PointCheck(("inf",), True, None, None))
            continue
        try:
            x, y = (_to_quad(c, d) for c in pt)
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"cannot read point {pt!r}") from exc
        lhs, rhs = y * y, curve.g(x)
        out.append(PointCheck((x, y), lhs == rhs, lhs, rhs))
    return out


def klein_orbit(point) -> list[tuple]:
    """Images under sigma, w and w*sigma (including the point itself)."""
    x, y = point
    return [(x, y), (x, -y), (-x, y), (-x, -y)]


# -- symbolic identities --------------------------------------------------------


def symbolic_identities(c3=None, c2=None, c1=None, c0=None) -> dict[str, bool]:
    """Check the quotient and pullback identities with sympy.

    Omitted coefficients stay symbolic, so the default call checks the
    general formulas.  Returns a name -> bool map.
    """
    x, y = sympy.symbols("x y")
    syms = sympy.symbols("c3 c2 c1 c0")
    vals = [s if v is None else sympy.Rational(Fraction(v).numerator, Fraction(v).denominator)
            for s, v in zip(syms, (c3, c2, c1, c0))]
    C3, C2, C1, C0 = vals
    g = C3 * x ** 6 + C2 * x ** 4 + C1 * x ** 2 + C0

    def reduce(expr):
        # substitute y^2 = g(x)
        num, den = sympy.fraction(sympy.together(sympy.expand(expr)))
        num = sympy.Poly(sympy.expand(num), y)
        rem = sympy.rem(num, sympy.Poly(y ** 2 - g, y))
        return sympy.simplify(rem.as_expr() / den)

    out = {}
    u1, v1 = x ** 2, y
    out["f1_lands_on_C1"] = reduce(v1 ** 2 - (C3 * u1 ** 3 + C2 * u1 ** 2 + C1 * u1 + C0)) == 0
    u2, v2 = C0 / x ** 2, C0 * y / x ** 3
    out["f2_lands_on_C2"] = reduce(
        v2 ** 2 - (u2 ** 3 + C1 * u2 ** 2 + C2 * C0 * u2 + C3 * C0 ** 2)) == 0
    # pullback of du/(2v) in units of dx/(2y): (du/dx) * y / v
    ratio1 = sympy.simplify(sympy.diff(u1, x) * y / v1)
    ratio2 = sympy.simplify(sympy.diff(u2, x) * y / v2)
    out["f1_pullback_is_2x"] = sympy.simplify(ratio1 - 2 * x) == 0
    out["f2_pullback_is_minus_2"] = sympy.simplify(ratio2 + 2) == 0
    return out


def monic_template_formulas() -> dict[str, bool]:
    """The quotient formulas with c3 = 1 against the monic textbook forms."""
    a4, a2, a0, u = sympy.symbols("a4 a2 a0 u")
    bm_C1 = u ** 3 + a4 * u ** 2 + a2 * u + a0
    bm_C2 = u ** 3 + a2 * u ** 2 + a4 * a0 * u + a0 ** 2
    c3, c2, c1, c0 = 1, a4, a2, a0
    ours_C1 = c3 * u ** 3 + c2 * u ** 2 + c1 * u + c0
    ours_C2 = u ** 3 + c1 * u ** 2 + c2 * c0 * u + c3 * c0 ** 2
    return {"C1": sympy.expand(ours_C1 - bm_C1) == 0, "C2": sympy.expand(ours_C2 - bm_C2) == 0}


X0_37_BIELLIPTIC = BiellipticModel(-1, -9, -11, 37)

# The points of X0(37) over Q(i) other than the two points at infinity
X0_37_GAUSSIAN_POINTS = (("2*s", "1"), ("2*s", "-1"), ("-2*s", "1"), ("-2*s", "-1"),
                         ("1", "4"), ("1", "-4"), ("-1", "4"), ("-1", "-4"))
